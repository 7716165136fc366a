#include "hypembed/pso.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

#include "hypembed/rng.hpp"

namespace hypembed {

void EpsoParams::validate() const {
  if (!(zeta > 0.0)) throw ParamError("zeta must be > 0");
  if (n_nodes < 1) throw ParamError("n_nodes must be >= 1");
  if (!(m >= 0.0)) throw ParamError("m must be >= 0");
  if (!(beta > 0.0 && beta <= 1.0)) throw ParamError("beta must be in (0, 1]");
  if (!(temperature >= 0.0 && temperature < 1.0)) {
    throw ParamError("temperature must be in [0, 1)");
  }
  if (!(m + ell >= 0.0)) throw ParamError("m + L must be >= 0");
}

double cutoff_radius(int i, const EpsoParams& p, double m_eff) {
  if (i < 2) throw ParamError("cutoff radius needs birth index >= 2");
  if (!(m_eff > 0.0)) throw ParamError("cutoff radius needs m_eff > 0");
  const double T = p.temperature;
  const double r_ii = (2.0 / p.zeta) * std::log(static_cast<double>(i));
  if (p.beta == 1.0) {
    const double tfac =
        T > 0.0 ? T / std::sin(T * std::numbers::pi) : 1.0 / std::numbers::pi;
    return r_ii - (2.0 / p.zeta) * std::log(tfac * p.zeta * r_ii / m_eff);
  }
  const double tfac = T > 0.0 ? 2.0 * T / std::sin(T * std::numbers::pi)
                              : 2.0 / std::numbers::pi;
  const double omb = 1.0 - p.beta;
  const double fade = 1.0 - std::exp(-0.5 * p.zeta * omb * r_ii);
  return r_ii - (2.0 / p.zeta) * std::log(tfac * fade / (m_eff * omb));
}

double connection_probability(double x, double cutoff, const EpsoParams& p) {
  if (!(p.temperature > 0.0)) {
    throw ParamError("connection probability is undefined at T = 0; "
                     "use the deterministic nearest rule");
  }
  const double u = p.zeta * (x - cutoff) / (2.0 * p.temperature);
  if (u > 0.0) {
    const double e = std::exp(-u);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(u));
}

double expected_internal_links(int i, const EpsoParams& p) {
  const int n = p.n_nodes;
  if (i < 1 || i > n) throw std::out_of_range("birth index out of range");
  if (p.ell == 0.0 || i == n || n == 1) return 0.0;
  const double L = p.ell;
  const double b = p.beta;
  const double ratio = static_cast<double>(n) / i;
  if (b > 1.0 - 1e-9) {
    // beta -> 1 limit: 2 L (N/i - 1) ln i / (ln N)^2
    const double ln_n = std::log(static_cast<double>(n));
    return 2.0 * L * (ratio - 1.0) * std::log(static_cast<double>(i)) / (ln_n * ln_n);
  }
  const double omb = 1.0 - b;
  const double norm = 1.0 - std::pow(static_cast<double>(n), -omb);
  const double tail = 1.0 - std::pow(static_cast<double>(i), -omb);
  // beta -> 1/2 limit of ((N/i)^(2b-1) - 1)/(2b-1) is ln(N/i)
  const double mid = std::fabs(b - 0.5) < 1e-9
                         ? std::log(ratio)
                         : (std::pow(ratio, 2.0 * b - 1.0) - 1.0) / (2.0 * b - 1.0);
  return 2.0 * L * omb / (norm * norm) * mid * tail;
}

namespace {

inline long long pair_key(int u, int v, int n) {
  if (u > v) std::swap(u, v);
  return static_cast<long long>(u) * n + v;
}

// Shared generator. m_per_step, when given, holds the per-step expected
// external link count (index = node id); otherwise p.m is used throughout.
GeneratedNetwork generate_impl(const EpsoParams& p, std::uint64_t seed,
                               const std::vector<double>* m_per_step,
                               int l_plus, int l_minus) {
  p.validate();
  const int n = p.n_nodes;
  const double zeta = p.zeta;
  const double beta = p.beta;
  const bool thermal = p.temperature > 0.0;
  constexpr double two_pi = 2.0 * std::numbers::pi;

  Rng rng(seed);
  std::vector<double> theta(n), r_birth(n);
  std::vector<std::pair<int, int>> edge_vec;
  std::unordered_set<long long> edge_set;
  edge_vec.reserve(static_cast<std::size_t>(
      std::max(1.0, (p.m + std::max(0.0, p.ell) + 1.0) * n)));
  GeneratedNetwork out;

  auto add_edge = [&](int u, int v) {
    edge_vec.emplace_back(std::min(u, v), std::max(u, v));
    edge_set.insert(pair_key(u, v, n));
  };

  for (int i = 1; i <= n; ++i) {
    const int id = i - 1;
    const std::size_t prefix = edge_vec.size();  // all old-old links
    theta[id] = rng.uniform() * two_pi;
    r_birth[id] = (2.0 / zeta) * std::log(static_cast<double>(i));
    const double r_now = r_birth[id];

    // Faded radius of node (by id) at the current step.
    auto cur_r = [&](int j) { return beta * r_birth[j] + (1.0 - beta) * r_now; };
    auto cur_coord = [&](int j) { return PolarCoord{cur_r(j), theta[j]}; };
    auto dist = [&](int a, int b) {
      return hyperbolic_distance(cur_coord(a), cur_coord(b), zeta);
    };

    // --- external links (rule 3) ---
    const double m_i = m_per_step ? (*m_per_step)[id] : p.m;
    const long long m_round = std::llround(m_i);
    if (i >= 2 && m_i > 0.0) {
      if (i - 1 <= m_round) {
        for (int j = 0; j < id; ++j) add_edge(j, id);
      } else if (!thermal) {
        // round(m_i) hyperbolically closest predecessors; ties to earlier birth
        std::vector<std::pair<double, int>> cand(id);
        const PolarCoord self{r_now, theta[id]};
        for (int j = 0; j < id; ++j) {
          cand[j] = {distance_cosh_arg(cur_coord(j), self, zeta), j};
        }
        auto k = static_cast<std::size_t>(m_round);
        std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
        std::vector<int> picked(k);
        for (std::size_t t = 0; t < k; ++t) picked[t] = cand[t].second;
        std::sort(picked.begin(), picked.end());
        for (int j : picked) add_edge(j, id);
      } else {
        const double cut = cutoff_radius(i, p, m_i);
        for (int j = 0; j < id; ++j) {
          if (rng.uniform() < connection_probability(dist(j, id), cut, p)) {
            add_edge(j, id);
          }
        }
      }
    }

    // --- internal links (rule 4) ---
    if (l_plus == 0 && l_minus == 0) continue;
    const int n_old = i - 1;
    std::unordered_set<long long> touched;
    const double cut_i =
        (thermal && (l_plus > 0 || l_minus > 0) && i >= 2 && p.m > 0.0)
            ? cutoff_radius(i, p, p.m)
            : 0.0;

    for (int t = 0; t < l_plus; ++t) {
      if (n_old < 2) {
        ++out.skipped_insertions;
        continue;
      }
      const long long n_pairs =
          static_cast<long long>(n_old) * (n_old - 1) / 2;
      bool inserted = false;
      if (!thermal) {
        // deterministic: closest disconnected untouched old pair
        double best = std::numeric_limits<double>::infinity();
        int bu = -1, bv = -1;
        for (int u = 0; u < n_old; ++u) {
          for (int v = u + 1; v < n_old; ++v) {
            const long long key = pair_key(u, v, n);
            if (edge_set.count(key) || touched.count(key)) continue;
            const double a = distance_cosh_arg(cur_coord(u), cur_coord(v), zeta);
            if (a < best) {
              best = a;
              bu = u;
              bv = v;
            }
          }
        }
        if (bu >= 0) {
          add_edge(bu, bv);
          touched.insert(pair_key(bu, bv, n));
          inserted = true;
        }
      } else {
        const long long cap = std::max<long long>(64, 30LL * n_old);
        for (long long attempt = 0; attempt < cap; ++attempt) {
          int u = static_cast<int>(rng.below(n_old));
          int v = static_cast<int>(rng.below(n_old - 1));
          if (v >= u) ++v;
          const long long key = pair_key(u, v, n);
          const double coin = rng.uniform();
          if (edge_set.count(key) || touched.count(key)) continue;
          if (coin < connection_probability(dist(u, v), cut_i, p)) {
            add_edge(u, v);
            touched.insert(key);
            inserted = true;
            break;
          }
        }
        if (!inserted && n_pairs > 0) {
          // exact fallback: weight every disconnected untouched pair by p
          std::vector<std::tuple<int, int, double>> cand;
          double total = 0.0;
          for (int u = 0; u < n_old; ++u) {
            for (int v = u + 1; v < n_old; ++v) {
              const long long key = pair_key(u, v, n);
              if (edge_set.count(key) || touched.count(key)) continue;
              const double w = connection_probability(dist(u, v), cut_i, p);
              if (w > 0.0) {
                cand.emplace_back(u, v, w);
                total += w;
              }
            }
          }
          if (total > 0.0) {
            double ticket = rng.uniform() * total;
            std::size_t pick = cand.size() - 1;
            for (std::size_t c = 0; c < cand.size(); ++c) {
              ticket -= std::get<2>(cand[c]);
              if (ticket <= 0.0) {
                pick = c;
                break;
              }
            }
            const auto& [u, v, w] = cand[pick];
            add_edge(u, v);
            touched.insert(pair_key(u, v, n));
            inserted = true;
          }
        }
      }
      if (!inserted) ++out.skipped_insertions;
    }

    if (l_minus > 0 && prefix > 0) {
      // weight every old-old link by 1 - p (T > 0) or pick the furthest (T = 0)
      std::vector<double> weight(prefix, 0.0);
      for (std::size_t e = 0; e < prefix; ++e) {
        const auto& [u, v] = edge_vec[e];
        if (touched.count(pair_key(u, v, n))) continue;
        if (thermal) {
          weight[e] = 1.0 - connection_probability(dist(u, v), cut_i, p);
        } else {
          weight[e] = distance_cosh_arg(cur_coord(u), cur_coord(v), zeta);
        }
      }
      std::vector<std::size_t> victims;
      for (int t = 0; t < l_minus; ++t) {
        std::size_t pick = prefix;
        if (thermal) {
          double total = 0.0;
          for (std::size_t e = 0; e < prefix; ++e) total += weight[e];
          if (total > 0.0) {
            double ticket = rng.uniform() * total;
            for (std::size_t e = 0; e < prefix; ++e) {
              if (weight[e] <= 0.0) continue;
              ticket -= weight[e];
              pick = e;
              if (ticket <= 0.0) break;
            }
          }
        } else {
          double best = 0.0;
          for (std::size_t e = 0; e < prefix; ++e) {
            if (weight[e] > best) {
              best = weight[e];
              pick = e;
            }
          }
        }
        if (pick >= prefix) {
          ++out.skipped_deletions;
          continue;
        }
        weight[pick] = 0.0;
        victims.push_back(pick);
      }
      std::sort(victims.rbegin(), victims.rend());
      for (std::size_t e : victims) {
        const auto& [u, v] = edge_vec[e];
        edge_set.erase(pair_key(u, v, n));
        edge_vec[e] = edge_vec.back();
        edge_vec.pop_back();
      }
    } else if (l_minus > 0) {
      out.skipped_deletions += l_minus;
    }
  }

  out.true_coords.resize(n);
  const double r_final = r_birth[n - 1];
  for (int j = 0; j < n; ++j) {
    out.true_coords[j] = {beta * r_birth[j] + (1.0 - beta) * r_final, theta[j]};
  }
  out.graph = Graph(n, std::move(edge_vec));
  return out;
}

}  // namespace

GeneratedNetwork pso_generate(const EpsoParams& p, std::uint64_t seed) {
  if (p.ell != 0.0) throw ParamError("the plain PSO model requires L = 0");
  return generate_impl(p, seed, nullptr, 0, 0);
}

GeneratedNetwork gpso_generate(const EpsoParams& p, int l_plus, int l_minus,
                               std::uint64_t seed) {
  if (l_plus < 0 || l_minus < 0) throw ParamError("l_plus/l_minus must be >= 0");
  if (p.ell != static_cast<double>(l_plus - l_minus)) {
    throw ParamError("net internal links L must equal l_plus - l_minus");
  }
  if (p.temperature > 0.0 && p.m <= 0.0 && (l_plus > 0 || l_minus > 0)) {
    throw ParamError("internal links need m > 0 to define the cutoff");
  }
  return generate_impl(p, seed, nullptr, l_plus, l_minus);
}

GeneratedNetwork epso_generate(const EpsoParams& p, std::uint64_t seed) {
  p.validate();
  std::vector<double> m_step(p.n_nodes);
  for (int i = 1; i <= p.n_nodes; ++i) {
    m_step[i - 1] = p.m + expected_internal_links(i, p);
    if (m_step[i - 1] < 0.0) {
      throw ParamError("E-PSO expected link count m + Lbar_i is negative at i = " +
                       std::to_string(i));
    }
  }
  return generate_impl(p, seed, &m_step, 0, 0);
}

}  // namespace hypembed
