#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hypembed/graph.hpp"
#include "hypembed/likelihood.hpp"
#include "hypembed/quality.hpp"

namespace hypembed {

struct CoordinateRow {
  std::string label;
  double r = 0.0;
  double theta = 0.0;
  std::optional<std::string> color;  // pass-through for rendering
};

// Header `# id r theta`, one row per node, values at 17 significant digits so
// a reload reproduces every double bit for bit. A color column is appended on
// rows that carry one.
void write_coordinate_file(std::ostream& out, const std::vector<CoordinateRow>& rows);

// Inverse of write_coordinate_file: '#' lines and blank lines ignored, rows
// are `label r theta [color]`. Malformed rows, negative radii and duplicate
// labels raise DataError with the line number.
[[nodiscard]] std::vector<CoordinateRow> read_coordinate_file(std::istream& in);

[[nodiscard]] std::vector<CoordinateRow> rows_from_embedding(const Graph& g,
                                                             const Embedding& emb);

// Match rows to the graph by label. Every node needs exactly one row;
// unknown and duplicate labels are DataErrors naming the label. Angles are
// normalized into [0, 2 pi); radial_order is rebuilt by ascending radius
// (ties by id), innermost first.
[[nodiscard]] Embedding embedding_from_rows(const Graph& g,
                                            const std::vector<CoordinateRow>& rows,
                                            const EpsoParams& p);

// {method, seed, rounds, logloss, gr_score, success_ratio}, two-space
// indented, key order fixed.
[[nodiscard]] std::string report_to_json(const QualityReport& rep);
[[nodiscard]] std::string reports_to_json(const std::vector<QualityReport>& reps);

// One row per trial: n_s,best_ll,best_gr,pred_ll,pred_gr. The prediction
// columns evaluate the extreme-value fits of the cumulative best curves
// (points with n_s >= 2; at least 3 needed, otherwise every pred is nan);
// the n_s = 1 row predicts the fitted location itself.
[[nodiscard]] std::string repeat_csv(const RepeatResult& result);

// Nodes as circles at (r cos theta, r sin theta) scaled by `scale` pixels per
// radial unit; edges (when a graph is given) as straight segments; a hairline
// circle marks the occupied disk. Node fill comes from the color column when
// present.
void write_svg(std::ostream& out, const std::vector<CoordinateRow>& rows,
               const Graph* edges_of, double scale);

}  // namespace hypembed
