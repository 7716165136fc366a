#include "hypembed/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "hypembed/errors.hpp"
#include "hypembed/hyperbolic.hpp"

namespace hypembed {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double parse_double(const std::string& tok, long long line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line_no) + ": '" + tok + "' is not a number");
  }
  if (used != tok.size()) {
    throw DataError("line " + std::to_string(line_no) + ": '" + tok + "' is not a number");
  }
  return v;
}

nlohmann::ordered_json report_json(const QualityReport& rep) {
  nlohmann::ordered_json j;
  j["method"] = rep.method;
  j["seed"] = rep.seed;
  j["rounds"] = rep.rounds;
  j["logloss"] = rep.logloss;
  j["gr_score"] = rep.gr_score;
  j["success_ratio"] = rep.success_ratio;
  return j;
}

}  // namespace

void write_coordinate_file(std::ostream& out, const std::vector<CoordinateRow>& rows) {
  out << "# id r theta\n";
  for (const auto& row : rows) {
    out << row.label << ' ' << fmt17(row.r) << ' ' << fmt17(row.theta);
    if (row.color) out << ' ' << *row.color;
    out << '\n';
  }
}

std::vector<CoordinateRow> read_coordinate_file(std::istream& in) {
  std::vector<CoordinateRow> rows;
  std::unordered_map<std::string, long long> seen;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // Whole-line comments only: a '#' inside a row would eat hex colors.
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() < 3 || tok.size() > 4) {
      throw DataError("line " + std::to_string(line_no) +
                      ": expected 'label r theta [color]', got " +
                      std::to_string(tok.size()) + " tokens");
    }
    CoordinateRow row;
    row.label = tok[0];
    row.r = parse_double(tok[1], line_no);
    row.theta = parse_double(tok[2], line_no);
    if (!(row.r >= 0.0)) {
      throw DataError("line " + std::to_string(line_no) + ": radius must be >= 0");
    }
    if (!std::isfinite(row.theta)) {
      throw DataError("line " + std::to_string(line_no) + ": angle must be finite");
    }
    if (tok.size() == 4) row.color = tok[3];
    if (!seen.emplace(row.label, line_no).second) {
      throw DataError("line " + std::to_string(line_no) + ": duplicate label '" +
                      row.label + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CoordinateRow> rows_from_embedding(const Graph& g, const Embedding& emb) {
  if (emb.coords.size() != static_cast<std::size_t>(g.n_nodes())) {
    throw DataError("coordinate count does not match node count");
  }
  std::vector<CoordinateRow> rows(emb.coords.size());
  for (int v = 0; v < g.n_nodes(); ++v) {
    rows[static_cast<std::size_t>(v)] = {g.label(v), emb.coords[static_cast<std::size_t>(v)].r,
                                         emb.coords[static_cast<std::size_t>(v)].theta,
                                         std::nullopt};
  }
  return rows;
}

Embedding embedding_from_rows(const Graph& g, const std::vector<CoordinateRow>& rows,
                              const EpsoParams& p) {
  std::unordered_map<std::string, int> by_label;
  by_label.reserve(static_cast<std::size_t>(g.n_nodes()));
  for (int v = 0; v < g.n_nodes(); ++v) by_label.emplace(g.label(v), v);

  Embedding emb;
  emb.params = p;
  emb.params.n_nodes = g.n_nodes();
  emb.params.validate();
  emb.coords.assign(static_cast<std::size_t>(g.n_nodes()), PolarCoord{});
  std::vector<char> covered(static_cast<std::size_t>(g.n_nodes()), 0);
  for (const auto& row : rows) {
    const auto it = by_label.find(row.label);
    if (it == by_label.end()) {
      throw DataError("unknown node '" + row.label + "' in coordinate file");
    }
    if (covered[static_cast<std::size_t>(it->second)]) {
      throw DataError("node '" + row.label + "' appears twice in coordinate file");
    }
    covered[static_cast<std::size_t>(it->second)] = 1;
    emb.coords[static_cast<std::size_t>(it->second)] = {row.r, normalize_angle(row.theta)};
  }
  for (int v = 0; v < g.n_nodes(); ++v) {
    if (!covered[static_cast<std::size_t>(v)]) {
      throw DataError("no coordinates for node '" + g.label(v) + "'");
    }
  }
  emb.radial_order.resize(static_cast<std::size_t>(g.n_nodes()));
  std::iota(emb.radial_order.begin(), emb.radial_order.end(), 0);
  std::sort(emb.radial_order.begin(), emb.radial_order.end(), [&](int a, int b) {
    const double ra = emb.coords[static_cast<std::size_t>(a)].r;
    const double rb = emb.coords[static_cast<std::size_t>(b)].r;
    if (ra != rb) return ra < rb;
    return a < b;
  });
  return emb;
}

std::string report_to_json(const QualityReport& rep) {
  return report_json(rep).dump(2) + "\n";
}

std::string reports_to_json(const std::vector<QualityReport>& reps) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& rep : reps) arr.push_back(report_json(rep));
  return arr.dump(2) + "\n";
}

std::string repeat_csv(const RepeatResult& result) {
  const std::size_t n = result.best_ll.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<std::pair<long long, double>> ll_series, gr_series;
  for (std::size_t i = 1; i < n; ++i) {  // points with n_s >= 2
    ll_series.emplace_back(static_cast<long long>(i + 1), result.best_ll[i]);
    gr_series.emplace_back(static_cast<long long>(i + 1), result.best_gr[i]);
  }
  std::optional<ExtremeValueFit> ll_fit, gr_fit;
  if (ll_series.size() >= 3) {
    ll_fit = fit_best_of_n(ll_series, FitDirection::min);
    gr_fit = fit_best_of_n(gr_series, FitDirection::max);
  }
  const auto pred = [&](const std::optional<ExtremeValueFit>& fit, double sign,
                        std::size_t trial_count) {
    if (!fit) return nan;
    if (trial_count < 2) return fit->mu;
    return fit->mu + sign * fit->sigma * gumbel_correction(static_cast<long long>(trial_count));
  };

  std::string out = "n_s,best_ll,best_gr,pred_ll,pred_gr\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += fmt17(result.best_ll[i]);
    out += ',';
    out += fmt17(result.best_gr[i]);
    out += ',';
    out += fmt17(pred(ll_fit, -1.0, i + 1));
    out += ',';
    out += fmt17(pred(gr_fit, +1.0, i + 1));
    out += '\n';
  }
  return out;
}

void write_svg(std::ostream& out, const std::vector<CoordinateRow>& rows,
               const Graph* edges_of, double scale) {
  if (!(scale > 0.0)) throw ParamError("svg scale must be > 0");
  double max_r = 0.0;
  for (const auto& row : rows) max_r = std::max(max_r, row.r);
  const double margin = 10.0;
  const double half = max_r * scale + margin;
  const double size = 2.0 * half;

  const auto px = [&](const CoordinateRow& row) {
    return std::pair<double, double>{half + scale * row.r * std::cos(row.theta),
                                     half - scale * row.r * std::sin(row.theta)};
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt6(size)
      << "\" height=\"" << fmt6(size) << "\" viewBox=\"0 0 " << fmt6(size) << ' '
      << fmt6(size) << "\">\n";
  out << "  <circle class=\"disk\" cx=\"" << fmt6(half) << "\" cy=\"" << fmt6(half)
      << "\" r=\"" << fmt6(max_r * scale) << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";

  if (edges_of != nullptr) {
    std::unordered_map<std::string, std::size_t> by_label;
    for (std::size_t i = 0; i < rows.size(); ++i) by_label.emplace(rows[i].label, i);
    for (const auto& [u, v] : edges_of->edges()) {
      const auto iu = by_label.find(edges_of->label(u));
      const auto iv = by_label.find(edges_of->label(v));
      if (iu == by_label.end() || iv == by_label.end()) {
        throw DataError("edge endpoint without coordinates: " +
                        (iu == by_label.end() ? edges_of->label(u) : edges_of->label(v)));
      }
      const auto [x1, y1] = px(rows[iu->second]);
      const auto [x2, y2] = px(rows[iv->second]);
      out << "  <line x1=\"" << fmt6(x1) << "\" y1=\"" << fmt6(y1) << "\" x2=\""
          << fmt6(x2) << "\" y2=\"" << fmt6(y2)
          << "\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
    }
  }
  for (const auto& row : rows) {
    const auto [x, y] = px(row);
    out << "  <circle class=\"node\" cx=\"" << fmt6(x) << "\" cy=\"" << fmt6(y)
        << "\" r=\"3\" fill=\"" << (row.color ? *row.color : std::string("#4682b4"))
        << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace hypembed
