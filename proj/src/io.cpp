#include "hermiso/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "hermiso/errors.hpp"
#include "hermiso/multi_index.hpp"

namespace hermiso {

namespace {

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DataError("complex values must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json point_to_json(const Point& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

Point point_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw DataError("points must be nonempty arrays");
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) p[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return p;
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Json scenario_to_json(const Scenario& s) {
  Json j;
  j["q"] = s.q;
  j["masses"] = Json::array();
  for (const auto& pm : s.masses) {
    Json m;
    m["x"] = point_to_json(pm.location);
    m["a"] = complex_to_json(pm.amplitude);
    j["masses"].push_back(std::move(m));
  }
  j["box"] = {{"lo", point_to_json(s.box.lo)}, {"hi", point_to_json(s.box.hi)}};
  return j;
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  try {
    s.q = j.at("q").get<int>();
    s.box.lo = point_from_json(j.at("box").at("lo"));
    s.box.hi = point_from_json(j.at("box").at("hi"));
    for (const auto& m : j.at("masses")) {
      PointMass pm;
      pm.location = point_from_json(m.at("x"));
      pm.amplitude = complex_from_json(m.at("a"));
      s.masses.push_back(std::move(pm));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed scenario file: ") + e.what());
  }
  s.validate();
  return s;
}

Json moments_to_json(const MomentSet& m) {
  Json j;
  j["q"] = m.q();
  j["side"] = to_string(m.side());
  j["max_total_degree"] = m.max_total_degree();
  if (m.max_perturbation() > 0.0) j["max_perturbation"] = m.max_perturbation();
  j["values"] = Json::array();
  const auto indices = enumerate_indices(m.q(), m.max_total_degree());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    Json entry;
    Json k = Json::array();
    for (int a = 0; a < m.q(); ++a) k.push_back(indices[r].degrees[a]);
    entry["k"] = std::move(k);
    entry["v"] = complex_to_json(m.value_at_rank(static_cast<Eigen::Index>(r), indices[r].total));
    j["values"].push_back(std::move(entry));
  }
  return j;
}

MomentSet moments_from_json(const Json& j) {
  try {
    const int q = j.at("q").get<int>();
    const Side side = side_from_string(j.at("side").get<std::string>());
    const int bound = j.at("max_total_degree").get<int>();
    if (q < 1 || bound < 0) throw DataError("moment file has invalid dimensions");
    Eigen::VectorXcd values =
        Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(index_count(q, bound)));
    MomentSet probe(q, side, bound, values);  // for side factors
    for (const auto& entry : j.at("values")) {
      const auto& karr = entry.at("k");
      if (!karr.is_array() || static_cast<int>(karr.size()) != q) {
        throw DataError("moment index dimension does not match q");
      }
      Eigen::VectorXi deg(q);
      for (int a = 0; a < q; ++a) deg[a] = karr[a].get<int>();
      const MultiIndex k = make_index(std::move(deg));
      if (k.total >= bound) throw DataError("moment index exceeds max_total_degree");
      const Complex v = complex_from_json(entry.at("v"));
      values[graded_lex_rank(k)] =
          side == Side::spatial ? v : Complex(v / probe.side_factor(k.total));
    }
    const double max_pert = j.value("max_perturbation", 0.0);
    return MomentSet(q, side, bound, std::move(values), max_pert);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed moment file: ") + e.what());
  }
}

Json density_to_json(const DensityGrid& d) {
  Json j;
  j["box"] = {{"lo", point_to_json(d.box.lo)}, {"hi", point_to_json(d.box.hi)}};
  Json shape = Json::array();
  for (int a = 0; a < d.shape.size(); ++a) shape.push_back(d.shape[a]);
  j["shape"] = std::move(shape);
  Json values = Json::array();
  for (Eigen::Index i = 0; i < d.values.size(); ++i) values.push_back(d.values[i]);
  j["values"] = std::move(values);
  return j;
}

DensityGrid density_from_json(const Json& j) {
  DensityGrid d;
  try {
    d.box.lo = point_from_json(j.at("box").at("lo"));
    d.box.hi = point_from_json(j.at("box").at("hi"));
    const auto& shape = j.at("shape");
    d.shape.resize(static_cast<Eigen::Index>(shape.size()));
    for (std::size_t a = 0; a < shape.size(); ++a) {
      d.shape[static_cast<Eigen::Index>(a)] = shape[a].get<int>();
    }
    const auto& values = j.at("values");
    d.values.resize(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
      d.values[static_cast<Eigen::Index>(i)] = values[i].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed density file: ") + e.what());
  }
  d.validate();
  return d;
}

Json result_to_json(const DetectionResult& r, const std::vector<Group>* groups) {
  Json j;
  j["count"] = r.count();
  j["spikes"] = Json::array();
  for (const auto& s : r.spikes) {
    Json spike;
    spike["x"] = point_to_json(s.location);
    spike["a"] = complex_to_json(s.amplitude);
    spike["amplitude_valid"] = s.amplitude_valid;
    spike["peak"] = complex_to_json(s.peak_value);
    spike["cluster"] = s.cluster_id;
    spike["cluster_node_count"] = s.cluster_node_count;
    j["spikes"].push_back(std::move(spike));
  }
  const auto& d = r.diagnostics;
  Json diag;
  diag["threshold"] = d.threshold_used;
  diag["threshold_was_relative"] = d.threshold_was_relative;
  diag["linkage_radius"] = d.linkage_radius_used;
  diag["grid_max_abs"] = d.grid_max_abs;
  diag["grid_nodes"] = d.grid_nodes;
  diag["min_spike_distance"] =
      std::isfinite(d.min_spike_distance) ? Json(d.min_spike_distance) : Json(nullptr);
  diag["noise_bound"] = d.noise_bound;
  diag["noise_dominated"] = d.noise_dominated;
  j["diagnostics"] = std::move(diag);

  if (groups) {
    j["groups"] = Json::array();
    for (const auto& g : *groups) {
      Json gj;
      gj["id"] = g.id;
      gj["cardinality"] = g.stats.cardinality;
      gj["centroid"] = point_to_json(g.stats.centroid);
      gj["bounding_box"] = {{"lo", point_to_json(g.stats.bounding_box.lo)},
                            {"hi", point_to_json(g.stats.bounding_box.hi)}};
      gj["total_abs_amplitude"] = g.stats.total_abs_amplitude;
      gj["template"] = Json::array();
      for (const auto& s : g.members) {
        Json row;
        row["x"] = point_to_json(s.location);
        row["a"] = complex_to_json(s.amplitude);
        gj["template"].push_back(std::move(row));
      }
      j["groups"].push_back(std::move(gj));
    }
  }
  return j;
}

std::string grid_to_csv(const GridEvaluation& grid) {
  std::ostringstream out;
  const int q = grid.lattice.dim();
  for (int a = 0; a < q; ++a) out << "x" << (a + 1) << ",";
  out << "re,im,abs\n";
  for (Eigen::Index i = 0; i < grid.values.size(); ++i) {
    const Point x = grid.lattice.node(i);
    for (int a = 0; a < q; ++a) out << g17(x[a]) << ",";
    const Complex v = grid.values[i];
    out << g17(v.real()) << "," << g17(v.imag()) << "," << g17(std::abs(v)) << "\n";
  }
  return out.str();
}

std::string spikes_to_csv(const std::vector<DetectedSpike>& spikes,
                          const std::vector<int>* group_ids) {
  std::ostringstream out;
  const int q = spikes.empty() ? 1 : static_cast<int>(spikes.front().location.size());
  for (int a = 0; a < q; ++a) out << "x" << (a + 1) << ",";
  out << "re,im,abs,peak_re,peak_im,peak_abs,cluster";
  if (group_ids) out << ",group";
  out << "\n";
  for (std::size_t i = 0; i < spikes.size(); ++i) {
    const auto& s = spikes[i];
    for (int a = 0; a < q; ++a) out << g17(s.location[a]) << ",";
    out << g17(s.amplitude.real()) << "," << g17(s.amplitude.imag()) << ","
        << g17(std::abs(s.amplitude)) << "," << g17(s.peak_value.real()) << ","
        << g17(s.peak_value.imag()) << "," << g17(std::abs(s.peak_value)) << "," << s.cluster_id;
    if (group_ids) out << "," << (*group_ids)[i];
    out << "\n";
  }
  return out.str();
}

std::string groups_to_csv(const std::vector<Group>& groups) {
  std::ostringstream out;
  int q = 1;
  if (!groups.empty() && !groups.front().members.empty()) {
    q = static_cast<int>(groups.front().members.front().location.size());
  }
  out << "group";
  for (int a = 0; a < q; ++a) out << ",x" << (a + 1);
  out << ",re,im,abs\n";
  for (const auto& g : groups) {
    for (const auto& s : g.members) {
      out << g.id;
      for (int a = 0; a < q; ++a) out << "," << g17(s.location[a]);
      out << "," << g17(s.amplitude.real()) << "," << g17(s.amplitude.imag()) << ","
          << g17(std::abs(s.amplitude)) << "\n";
    }
  }
  return out.str();
}

std::string gnuplot_script(const GridEvaluation& grid, const std::vector<DetectedSpike>& spikes,
                           const std::string& grid_csv_path, const std::string& spike_csv_path,
                           bool grouped) {
  const int q = grid.lattice.dim();
  if (q != 1 && q != 2) throw DataError("gnuplot output supports q in {1, 2}");
  std::ostringstream out;
  out << "set datafile separator ','\n";
  out << "set key off\n";
  const int abs_col = q + 3;       // grid csv: x1..xq,re,im,abs
  const int peak_abs_col = q + 6;  // spike csv: x1..xq,re,im,abs,peak_re,peak_im,peak_abs,...
  const int group_col = q + 8;
  if (q == 1) {
    out << "set xlabel 'x'\nset ylabel '|T_n|'\n";
    out << "plot '" << grid_csv_path << "' every ::1 using 1:" << abs_col << " with lines";
    if (!spikes.empty()) {
      out << ", \\\n     '" << spike_csv_path << "' every ::1 using 1:" << peak_abs_col;
      if (grouped) out << ":" << group_col;
      out << " with points pt 7 ps 1.5";
      if (grouped) out << " lc variable";
    }
    out << "\n";
  } else {
    out << "set xlabel 'x1'\nset ylabel 'x2'\nset view map\nset pm3d interpolate 0,0\n";
    out << "set dgrid3d " << grid.lattice.axis(0).size() << "," << grid.lattice.axis(1).size()
        << "\n";
    out << "splot '" << grid_csv_path << "' every ::1 using 1:2:" << abs_col << " with pm3d";
    if (!spikes.empty()) {
      out << ", \\\n      '" << spike_csv_path << "' every ::1 using 1:2:(0)";
      if (grouped) out << ":" << group_col;
      out << " with points pt 7 ps 1.5";
      if (grouped) out << " lc variable";
    }
    out << "\n";
  }
  out << "pause -1\n";
  return out.str();
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("cannot parse JSON file " + path + ": " + e.what());
  }
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  out << text;
}

}  // namespace hermiso
