#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hermiso/detect.hpp"
#include "hermiso/group.hpp"
#include "hermiso/moments.hpp"
#include "hermiso/pio.hpp"

namespace hermiso {

using Json = nlohmann::ordered_json;

// --- scenario files -------------------------------------------------------
// {"q":2,"masses":[{"x":[0.5,-1.0],"a":[1.0,0.0]}],"box":{"lo":[-4,-4],"hi":[4,4]}}
Json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

// --- moment files ---------------------------------------------------------
// {"q":2,"side":"spatial","max_total_degree":64,
//  "values":[{"k":[0,0],"v":[re,im]}, ...]}   (graded-lex order)
// Values are written as seen on the tagged side; absent indices load as zero.
Json moments_to_json(const MomentSet& m);
MomentSet moments_from_json(const Json& j);

// --- density rasters ------------------------------------------------------
// {"box":{"lo":[...],"hi":[...]},"shape":[n1,...],"values":[...]}  (row-major,
// last axis fastest)
Json density_to_json(const DensityGrid& d);
DensityGrid density_from_json(const Json& j);

// --- detection results ----------------------------------------------------
Json result_to_json(const DetectionResult& r, const std::vector<Group>* groups = nullptr);

// --- CSV / gnuplot --------------------------------------------------------
std::string grid_to_csv(const GridEvaluation& grid);

/// Columns: x1..xq,re,im,abs,peak_re,peak_im,peak_abs,cluster[,group].
/// `group_ids`, when given, must parallel `spikes`.
std::string spikes_to_csv(const std::vector<DetectedSpike>& spikes,
                          const std::vector<int>* group_ids = nullptr);
std::string groups_to_csv(const std::vector<Group>& groups);

/// gnuplot script plotting |T_n| over the grid with detected spikes marked;
/// q = 1 draws a curve, q = 2 a pm3d map. With `grouped`, spike markers are
/// colored by the trailing group column of the spikes CSV.
std::string gnuplot_script(const GridEvaluation& grid, const std::vector<DetectedSpike>& spikes,
                           const std::string& grid_csv_path, const std::string& spike_csv_path,
                           bool grouped);

// --- files ----------------------------------------------------------------
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);
void save_text(const std::string& path, const std::string& text);

}  // namespace hermiso
