#include "ncdr/potential.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "ncdr/parallel.hpp"
#include "ncdr/pdo.hpp"
#include "ncdr/pixton.hpp"
#include "ncdr/psi.hpp"
#include "ncdr/series.hpp"

namespace ncdr {

Rational CoefficientSource::correlator(int g, int j, const TMonomial& N) {
  const int n = static_cast<int>(N.size());
  if (g < 0 || j < 0 || j > g || 2 * g - 2 + n <= 0) return 0;
  if (mode_sum(N) != 0) return 0;
  if (3 * g - 3 + n != j + psi_weight(N)) return 0;
  auto key = std::make_tuple(g, j, N);
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  std::vector<int> A, d;
  for (const auto& v : N) {
    A.push_back(v.a);
    d.push_back(v.d);
  }
  Rational value = compute(g, j, A, d);
  std::lock_guard lock(mu_);
  memo_.emplace(std::move(key), value);
  return value;
}

std::size_t CoefficientSource::evaluations() const {
  std::lock_guard lock(mu_);
  return memo_.size();
}

Rational PixtonSource::compute(int g, int j, const std::vector<int>& A, const std::vector<int>& d) {
  return pixton_pairing(g, j, A, d) / power(Rational(2), static_cast<unsigned>(j));
}

Rational PsiSource::compute(int g, int j, const std::vector<int>&, const std::vector<int>& d) {
  if (j != 0) return 0;
  return psi_correlator(g, d);
}

nlohmann::json PotentialCutoffs::to_json() const { return {{"G", G}, {"Amax", Amax}, {"Nmax", Nmax}, {"Dmax", Dmax}}; }

TruncatedPotential::TruncatedPotential(PotentialCutoffs cutoffs, std::shared_ptr<CoefficientSource> source)
    : cutoffs_(cutoffs), source_(std::move(source)) {}

bool TruncatedPotential::within(int g, int j, const TMonomial& N) const {
  if (g > cutoffs_.G || j > g || static_cast<int>(N.size()) > cutoffs_.Nmax || psi_weight(N) > cutoffs_.Dmax) {
    return false;
  }
  return std::all_of(N.begin(), N.end(), [&](const TVar& v) { return std::abs(v.a) <= cutoffs_.Amax; });
}

Rational TruncatedPotential::coefficient(int g, int j, const TMonomial& N) const {
  return derivative(g, j, N) / Rational(multiplicity_factorial(N));
}

void TruncatedPotential::materialize(unsigned jobs) {
  std::vector<PotentialKey> keys;
  for (int g = 0; g <= cutoffs_.G; ++g) {
    for (int j = 0; j <= g; ++j) {
      for (int n = 0; n <= cutoffs_.Nmax; ++n) {
        if (2 * g - 2 + n <= 0) continue;
        int weight = 3 * g - 3 + n - j;
        if (weight < 0 || weight > cutoffs_.Dmax) continue;
        for_each_tmonomial(n, weight, cutoffs_.Amax, [&](const TMonomial& m) {
          if (mode_sum(m) == 0) keys.push_back({g, j, m});
        });
      }
    }
  }
  std::vector<Rational> values(keys.size());
  parallel_for(keys.size(), [&](std::size_t i) { values[i] = coefficient(keys[i].g, keys[i].j, keys[i].mono); }, jobs);
  entries_.clear();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (sgn(values[i]) != 0) entries_.emplace(keys[i], values[i]);
  }
}

nlohmann::json TruncatedPotential::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [k, c] : entries_) {
    list.push_back({{"g", k.g}, {"j", k.j}, {"monomial", tmono_json(k.mono)}, {"coefficient", to_string(c)}});
  }
  return {{"cutoffs", cutoffs_.to_json()}, {"source", source_->name()}, {"entries", list}};
}

TruncatedPotential build_potential(const PotentialCutoffs& cutoffs, std::shared_ptr<CoefficientSource> source,
                                   unsigned jobs) {
  TruncatedPotential p(cutoffs, std::move(source));
  p.materialize(jobs);
  return p;
}

Rational DressedSeries::w(int a, int p, const TMonomial& M, int e, int m) const {
  if (e % 2 != 0 || m % 2 != 0 || e < 0 || m < 0) return 0;
  TMonomial N = tmono_add(tmono_add(M, TVar{0, 0}, p + 1), TVar{-a, 0});
  return potential_->derivative(e / 2, m / 2, N);
}

Rational DressedSeries::u(int a, int p, const TMonomial& M, int e, int m) const {
  if (e % 2 != 0 || m % 2 != 0 || e < 0 || m < 0) return 0;
  auto key = std::make_tuple(a, p, M, e, m);
  {
    std::lock_guard lock(mu_);
    auto it = u_memo_.find(key);
    if (it != u_memo_.end()) return it->second;
  }
  int top = std::min(e, m);
  TruncatedSeries T = series_T(a, top);
  Rational total = 0;
  for (int k = 0; 2 * k <= top; ++k) {
    const Rational& t = T[2 * k];
    if (sgn(t) == 0) continue;
    total += t * w(a, p + 2 * k, M, e - 2 * k, m - 2 * k);
  }
  std::lock_guard lock(mu_);
  u_memo_.emplace(std::move(key), total);
  return total;
}

nlohmann::json MainTheoremWindow::to_json() const {
  return {{"G", G}, {"Amax", Amax}, {"Nmax", Nmax}, {"Dmax", Dmax}, {"flow", flow}, {"muZero", mu_zero}};
}

namespace {

nlohmann::json residual_json(const ResidualEntry& r, bool with_values) {
  nlohmann::json j = {{"mode", r.a}, {"target", tmono_json(r.target)}, {"eps", r.eps}, {"mu", r.mu}};
  if (with_values) {
    j["lhs"] = to_string(r.lhs);
    j["rhs"] = to_string(r.rhs);
  }
  return j;
}

}  // namespace

nlohmann::json MainTheoremReport::to_json() const {
  nlohmann::json mm = nlohmann::json::array(), ex = nlohmann::json::array();
  for (const auto& r : mismatches) mm.push_back(residual_json(r, true));
  for (const auto& r : excluded) ex.push_back(residual_json(r, false));
  return {{"window", window.to_json()},
          {"checkedCoefficientCount", checked},
          {"excludedCount", excluded.size()},
          {"mismatches", mm},
          {"excluded", ex}};
}

FourierFlow fourier_flow_of(const DiffPoly2& rhs, const MainTheoremWindow& window) {
  return to_fourier(rhs.eps_at_most(2 * window.G), window.Amax);
}

FourierFlow main_theorem_flow(int n, const MainTheoremWindow& window) {
  // A term eps^e mu^m of the flow has x-degree e+1 and y-degree m <= e.
  DiffPoly2 rhs = lax_flow_rhs(n, {4 * window.G + 1, -1});
  return fourier_flow_of(rhs, window);
}

FourierFlow wk_flow(int n, const MainTheoremWindow& window) {
  DiffPoly2 rhs = lax_flow_rhs(n, {2 * window.G + 1, -1}).mu_zero();
  MainTheoremWindow single = window;
  single.Amax = 0;
  return fourier_flow_of(rhs, single);
}

namespace {

// d^M of the flow monomial's product of u-series at eps^E mu^Mu.
Rational monomial_derivative(const ModeMonomial& mono, const TMonomial& M, int E, int Mu, const DressedSeries& dressed) {
  const int k = static_cast<int>(mono.jets.size());
  const int de = E - mono.eps, dm = Mu - mono.mu;
  if (de < 0 || dm < 0 || de % 2 != 0 || dm % 2 != 0) return 0;
  if (k == 0) return (M.empty() && de == 0 && dm == 0) ? Rational(1) : Rational(0);
  Rational total = 0;
  for_each_split(M, k, [&](const std::vector<TMonomial>& parts, const Integer& weight) {
    for (int i = 0; i < k; ++i) {
      if (mode_sum(parts[i]) != mono.jets[i].mode) return;
    }
    // Distribute the remaining eps and mu powers over the factors.
    std::function<Rational(int, int, int)> rec = [&](int i, int e_left, int m_left) -> Rational {
      const auto& jet = mono.jets[i];
      if (i == k - 1) return dressed.u(jet.mode, jet.dx, parts[i], e_left, m_left);
      Rational s = 0;
      for (int e = 0; e <= e_left; e += 2) {
        for (int m = 0; m <= std::min(e, m_left); m += 2) {
          Rational f = dressed.u(jet.mode, jet.dx, parts[i], e, m);
          if (sgn(f) == 0) continue;
          s += f * rec(i + 1, e_left - e, m_left - m);
        }
      }
      return s;
    };
    total += Rational(weight) * rec(0, de, dm);
  });
  return total;
}

bool needs_missing_modes(const TMonomial& M, int bound) {
  bool missing = false;
  for_each_split(M, 2, [&](const std::vector<TMonomial>& parts, const Integer&) {
    if (std::abs(mode_sum(parts[0])) > bound) missing = true;
  });
  return missing;
}

}  // namespace

MainTheoremReport check_main_theorem(const FourierFlow& flow, const DressedSeries& dressed,
                                     const MainTheoremWindow& window, bool keep_values, unsigned jobs) {
  MainTheoremReport report;
  report.window = window;
  const int n = window.flow;
  std::size_t max_factors = 0;
  for (const auto& [a, eq] : flow.equations) {
    for (const auto& [m, c] : eq) max_factors = std::max(max_factors, m.jets.size());
  }

  std::vector<ResidualEntry> targets;
  for (int g = 0; g <= window.G; ++g) {
    for (int j = 0; j <= (window.mu_zero ? 0 : g); ++j) {
      for (int nM = 0; nM + 3 <= window.Nmax; ++nM) {
        int weight = 3 * g - j - n + nM;
        if (weight < 0 || weight + n > window.Dmax) continue;
        for_each_tmonomial(nM, weight, window.Amax, [&](const TMonomial& M) {
          int a = mode_sum(M);
          if (std::abs(a) > window.Amax) return;
          targets.push_back({a, M, 2 * g, 2 * j, 0, 0});
        });
      }
    }
  }

  std::vector<char> excluded(targets.size(), 0);
  parallel_for(
      targets.size(),
      [&](std::size_t i) {
        ResidualEntry& t = targets[i];
        if (std::abs(t.a) > flow.mode_bound || (max_factors >= 2 && needs_missing_modes(t.target, flow.mode_bound))) {
          excluded[i] = 1;
          return;
        }
        t.lhs = dressed.u(t.a, 0, tmono_add(t.target, TVar{0, n}), t.eps, t.mu);
        Rational rhs = 0;
        for (const auto& [mono, c] : flow.equations.at(t.a)) {
          if (mono.eps > t.eps || mono.mu > t.mu) continue;
          Rational v = monomial_derivative(mono, t.target, t.eps, t.mu, dressed);
          if (sgn(v) != 0) rhs += c * v;
        }
        t.rhs = rhs;
      },
      jobs);

  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (excluded[i]) {
      report.excluded.push_back(targets[i]);
      continue;
    }
    ++report.checked;
    if (targets[i].lhs != targets[i].rhs) report.mismatches.push_back(targets[i]);
    if (keep_values) report.values.push_back(targets[i]);
  }
  return report;
}

CheckReport check_corollary(int g, int a, int cutoff) {
  if (g < 1) throw std::invalid_argument("check_corollary: g must be >= 1");
  if (cutoff < 0) cutoff = 3 * g;
  if (cutoff < 3 * g) throw std::invalid_argument("check_corollary: cutoff must be >= 3g");
  CheckReport report{"corollary", {}};
  TruncatedSeries ratio = series_inv(series_T(a, cutoff));  // S(a w)/S(w)
  TruncatedSeries cubic = series_exp(TruncatedSeries::monomial(cutoff, 3, make_rational(1, 24)));
  for (int j = 0; j <= g; ++j) {
    int deg = 3 * g - 1 - j;
    std::vector<int> A{a, -a}, psi{deg, 0};
    Rational lhs = pixton_pairing(g, j, A, psi) / power(Rational(2), static_cast<unsigned>(j));
    // mu^{2j} z^{2j} from the ratio, z^{3(g-j)} from the exponential.
    Rational rhs = ratio[2 * j] * cubic[3 * (g - j)];
    report.checks.push_back({"corollary", {{"g", g}, {"a", a}, {"j", j}}, lhs, rhs});
  }
  return report;
}

CheckReport check_string_dilaton_potential(const TruncatedPotential& potential) {
  const auto& cut = potential.cutoffs();
  CheckReport report{"string-dilaton", {}};
  auto I = [&](int g, int j, const TMonomial& N) { return potential.derivative(g, j, N); };
  const TVar x{0, 0}, dil{0, 1};
  for (int g = 0; g <= cut.G; ++g) {
    for (int j = 0; j <= g; ++j) {
      for (int n = 0; n + 1 <= cut.Nmax; ++n) {
        // String equation, left-hand side d^{M + t^0_0} F.
        int w = 3 * g - 2 + n - j;
        if (w >= 0 && w <= cut.Dmax) {
          for_each_tmonomial(n, w, cut.Amax, [&](const TMonomial& M) {
            if (mode_sum(M) != 0) return;
            Rational rhs = 0;
            for (const auto& [v, mult] : multiplicities(M)) {
              if (v.d >= 1) rhs += mult * I(g, j, tmono_add(tmono_remove(M, v), TVar{v.a, v.d - 1}));
            }
            if (g == 0 && M.size() == 2 && M[0].d == 0 && M[1].d == 0) rhs += 1;
            if (g == 1 && M.empty()) rhs += I(1, j, tmono({x}));
            report.checks.push_back({"string", {{"g", g}, {"j", j}, {"M", tmono_json(M)}}, I(g, j, tmono_add(M, x)), rhs});
          });
        }
        // Dilaton equation, left-hand side d^{M + t^0_1} F.
        w = 3 * g - 3 + n - j;
        if (w >= 0 && w + 1 <= cut.Dmax) {
          for_each_tmonomial(n, w, cut.Amax, [&](const TMonomial& M) {
            if (mode_sum(M) != 0) return;
            Rational rhs = Rational(n + 2 * g - 2) * I(g, j, M);
            if (g == 1 && j == 0 && M.empty()) rhs += make_rational(1, 24);
            report.checks.push_back(
                {"dilaton", {{"g", g}, {"j", j}, {"M", tmono_json(M)}}, I(g, j, tmono_add(M, dil)), rhs});
          });
        }
      }
    }
  }
  // The genus-one constants themselves.
  if (potential.source().name() == "pixton") {
    std::vector<int> A{0}, psi{0};
    report.checks.push_back({"string-constant", {{"g", 1}, {"j", 1}}, I(1, 1, tmono({x})), make_rational(-1, 24)});
    report.checks.push_back({"string-constant-pixton", {{"g", 1}, {"j", 1}}, pixton_pairing(1, 1, A, psi) / 2,
                             make_rational(-1, 24)});
  }
  report.checks.push_back({"string-constant", {{"g", 1}, {"j", 0}}, I(1, 0, tmono({x})), Rational(0)});
  report.checks.push_back({"dilaton-constant", {{"g", 1}, {"j", 0}}, I(1, 0, tmono({dil})), make_rational(1, 24)});
  // Mode conservation: sum_v a_v m_v times each coefficient vanishes.
  for (const auto& [key, c] : potential.entries()) {
    report.checks.push_back(
        {"tdeg", {{"g", key.g}, {"j", key.j}, {"M", tmono_json(key.mono)}}, Rational(mode_sum(key.mono)) * c, 0});
  }
  return report;
}

CheckReport check_CD_functions(const CDCutoffs& cut, unsigned jobs) {
  CheckReport report{"cd", {}};
  const int deg = std::max(cut.total_degree, 2 * cut.G);
  struct Item {
    std::string name;
    nlohmann::json where;
    int g;
    std::vector<int> A, psi;
    Rational rhs;
  };
  std::vector<Item> items;
  for (int alpha = -cut.alpha_max; alpha <= cut.alpha_max; ++alpha) {
    TruncatedSeries invT = series_inv(series_T(alpha, 2 * cut.G));
    for (int g = 0; g <= cut.G; ++g) {
      items.push_back({"C", {{"alpha", alpha}, {"g", g}}, g, {alpha, -alpha, 0}, {2 * g, 0, 0}, invT[2 * g]});
    }
  }
  for (int a1 = -cut.alpha_max; a1 <= cut.alpha_max; ++a1) {
    for (int a2 = -cut.alpha_max; a2 <= cut.alpha_max; ++a2) {
      SparsePoly S = bivariate::compose_linear(series_S(deg), Rational(-a2), Rational(a1), deg);
      SparsePoly invT = bivariate::compose_linear(series_inv(series_T(a1 + a2, deg)), Rational(1), Rational(1), deg);
      SparsePoly base = bivariate::multiply(S, invT, deg);
      SparsePoly sum = bivariate::compose_linear(TruncatedSeries::monomial(deg, 1, Rational(1)), 1, 1, deg);
      SparsePoly gen = base;
      for (int n = 0; n <= cut.n_max; ++n) {
        for (int d1 = 0; d1 <= cut.total_degree; ++d1) {
          for (int d2 = 0; d1 + d2 <= cut.total_degree; ++d2) {
            int twice_g = d1 + d2 - n;
            if (twice_g < 0 || twice_g % 2 != 0 || twice_g / 2 > cut.G) continue;
            std::vector<int> A{a1, a2, -a1 - a2}, psi{d1, d2, 0};
            A.resize(n + 3, 0);
            psi.resize(n + 3, 0);
            items.push_back({"D",
                             {{"n", n}, {"alpha1", a1}, {"alpha2", a2}, {"d1", d1}, {"d2", d2}},
                             twice_g / 2,
                             A,
                             psi,
                             bivariate::coefficient(gen, d1, d2)});
          }
        }
        gen = bivariate::multiply(gen, sum, deg);
      }
    }
  }
  std::vector<Rational> lhs(items.size());
  parallel_for(items.size(), [&](std::size_t i) { lhs[i] = dr_pairing(items[i].g, items[i].A, items[i].psi); }, jobs);
  for (std::size_t i = 0; i < items.size(); ++i) {
    report.checks.push_back({items[i].name, items[i].where, lhs[i], items[i].rhs});
  }
  return report;
}

}  // namespace ncdr
