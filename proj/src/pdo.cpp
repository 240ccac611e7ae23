#include "ncdr/pdo.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <set>
#include <stdexcept>

namespace ncdr {

PseudoDiffOp PseudoDiffOp::dx_power(int k, int neg_tail, Truncation t) {
  PseudoDiffOp op(neg_tail, t);
  op.add(k, DiffPoly2::constant(GaussianRational(1), t));
  return op;
}

PseudoDiffOp PseudoDiffOp::multiplication(const DiffPoly2& a, int neg_tail) {
  PseudoDiffOp op(neg_tail, a.truncation());
  op.add(0, a);
  return op;
}

DiffPoly2 PseudoDiffOp::coeff(int order) const {
  auto it = coeffs_.find(order);
  return it == coeffs_.end() ? DiffPoly2(trunc_) : it->second;
}

void PseudoDiffOp::add(int order, const DiffPoly2& a) {
  if (order < -neg_tail_ || a.is_zero()) return;
  auto it = coeffs_.find(order);
  if (it == coeffs_.end()) {
    DiffPoly2 v = a.with_truncation(trunc_);
    if (!v.is_zero()) coeffs_.emplace(order, std::move(v));
    return;
  }
  it->second += a;
  if (it->second.is_zero()) coeffs_.erase(it);
}

int PseudoDiffOp::top_order() const {
  if (coeffs_.empty()) return -neg_tail_ - 1;
  return coeffs_.rbegin()->first;
}

PseudoDiffOp PseudoDiffOp::plus_part() const {
  PseudoDiffOp out(neg_tail_, trunc_);
  for (const auto& [i, a] : coeffs_) {
    if (i >= 0) out.coeffs_.emplace(i, a);
  }
  return out;
}

PseudoDiffOp& PseudoDiffOp::operator+=(const PseudoDiffOp& o) {
  neg_tail_ = std::min(neg_tail_, o.neg_tail_);
  for (auto it = coeffs_.begin(); it != coeffs_.end();) it = it->first < -neg_tail_ ? coeffs_.erase(it) : std::next(it);
  for (const auto& [i, a] : o.coeffs_) add(i, a);
  return *this;
}

PseudoDiffOp& PseudoDiffOp::operator-=(const PseudoDiffOp& o) {
  neg_tail_ = std::min(neg_tail_, o.neg_tail_);
  for (auto it = coeffs_.begin(); it != coeffs_.end();) it = it->first < -neg_tail_ ? coeffs_.erase(it) : std::next(it);
  for (const auto& [i, a] : o.coeffs_) add(i, -a);
  return *this;
}

namespace {

// Caches d_x^k b for the coefficients of B.
class DerivativeCache {
 public:
  const DiffPoly2& get(int order, const DiffPoly2& b, int k) {
    auto& chain = chains_[order];
    if (chain.empty()) chain.push_back(b);
    while (static_cast<int>(chain.size()) <= k) chain.push_back(chain.back().dx());
    return chain[k];
  }

 private:
  std::map<int, std::vector<DiffPoly2>> chains_;
};

template <class Emit>
void compose_terms(const PseudoDiffOp& A, const PseudoDiffOp& B, int tail, DerivativeCache& cache, int only_order,
                   Emit&& emit) {
  for (const auto& [i, a] : A.coeffs()) {
    for (const auto& [j, b] : B.coeffs()) {
      for (int k = 0;; ++k) {
        if (i >= 0 && k > i) break;
        int order = i + j - k;
        if (order < -tail) break;
        if (only_order != INT_MIN) {
          if (order > only_order) continue;
          if (order < only_order) break;
        }
        const DiffPoly2& db = cache.get(j, b, k);
        if (db.is_zero()) break;  // higher derivatives vanish too
        Rational c = binomial(Rational(i), static_cast<unsigned>(k));
        if (sgn(c) == 0) continue;
        DiffPoly2 prod = moyal(a, db);
        prod *= GaussianRational(c);
        emit(order, prod);
      }
    }
  }
}

}  // namespace

PseudoDiffOp pdo_compose(const PseudoDiffOp& A, const PseudoDiffOp& B) {
  int tail = std::min(A.neg_tail(), B.neg_tail());
  PseudoDiffOp out(tail, Truncation::meet(A.truncation(), B.truncation()));
  DerivativeCache cache;
  compose_terms(A, B, tail, cache, INT_MIN, [&](int order, const DiffPoly2& p) { out.add(order, p); });
  return out;
}

DiffPoly2 pdo_compose_coefficient(const PseudoDiffOp& A, const PseudoDiffOp& B, int order) {
  int tail = std::min(A.neg_tail(), B.neg_tail());
  DiffPoly2 out(Truncation::meet(A.truncation(), B.truncation()));
  DerivativeCache cache;
  compose_terms(A, B, tail, cache, order, [&](int, const DiffPoly2& p) { out += p; });
  return out;
}

PseudoDiffOp pdo_sqrt(const PseudoDiffOp& L) {
  const Truncation& t = L.truncation();
  if (L.top_order() != 2 || !(L.coeff(2) == DiffPoly2::constant(GaussianRational(1), t))) {
    throw std::domain_error("pdo_sqrt: operator must be d^2 + lower order terms");
  }
  PseudoDiffOp R = PseudoDiffOp::dx_power(1, L.neg_tail(), t);
  // The d^m coefficient of R o R is 2 b_{m-1} plus terms in b_j, j >= m.
  for (int m = 1; m - 1 >= -L.neg_tail(); --m) {
    DiffPoly2 gap = L.coeff(m) - pdo_compose_coefficient(R, R, m);
    gap *= GaussianRational(make_rational(1, 2));
    R.add(m - 1, gap);
  }
  return R;
}

PseudoDiffOp lax_operator(int neg_tail, Truncation t) {
  PseudoDiffOp L = PseudoDiffOp::dx_power(2, neg_tail, t);
  L.add(0, (DiffPoly2::jet(0, 0, t) * GaussianRational(2)).shifted(-2, 0));
  return L;
}

namespace {

struct FlowPieces {
  PseudoDiffOp power;  // L^{n+1/2}
  PseudoDiffOp L;
};

FlowPieces half_power(int n, const FlowWindow& window) {
  if (n < 1) throw std::invalid_argument("flow index must be >= 1");
  int tail = window.neg_tail < 0 ? 2 * n + 3 : window.neg_tail;
  if (tail < 2 * n + 1) throw std::invalid_argument("window error: neg_tail < 2n+1 leaves the flow underdetermined");
  Truncation t{window.max_diff_degree, window.max_diff_degree};
  PseudoDiffOp L = lax_operator(tail, t);
  PseudoDiffOp A = pdo_sqrt(L);
  for (int k = 0; k < n; ++k) A = pdo_compose(L, A);
  return {A, L};
}

Rational flow_prefactor(int n) { return Rational(1) / Rational(double_factorial(2 * n + 1)); }

}  // namespace

DiffPoly2 lax_flow_rhs(int n, const FlowWindow& window) {
  auto [A, L] = half_power(n, window);
  PseudoDiffOp P = A.plus_part();
  PseudoDiffOp C = pdo_compose(P, L) - pdo_compose(L, P);
  for (const auto& [i, c] : C.coeffs()) {
    if (i != 0) throw std::logic_error("commutator is not a multiplication operator");
  }
  DiffPoly2 rhs = C.coeff(0).shifted(2 * n + 2, 0);
  rhs *= GaussianRational(flow_prefactor(n) / 2);
  if (!rhs.is_eps_regular()) throw std::logic_error("flow has negative eps powers");
  return rhs;
}

DiffPoly2 flow_density(int n, const FlowWindow& window) {
  auto pieces = half_power(n, window);
  DiffPoly2 d = pieces.power.residue().shifted(2 * n + 2, 0);
  d *= GaussianRational(flow_prefactor(n));
  if (!d.is_eps_regular()) throw std::logic_error("density has negative eps powers");
  return d;
}

namespace {

// Solves rows * x = rhs exactly; each row is coefficients followed by the
// right-hand side.  Throws if inconsistent or underdetermined.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> rows, std::size_t unknowns) {
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < unknowns && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == r || sgn(rows[q][c]) == 0) continue;
      Rational f = rows[q][c];
      for (std::size_t k = c; k <= unknowns; ++k) rows[q][k] -= f * rows[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t q = r; q < rows.size(); ++q) {
    if (sgn(rows[q][unknowns]) != 0) throw std::runtime_error("star factorization: inconsistent system");
  }
  if (r < unknowns) throw std::runtime_error("star factorization: underdetermined system");
  std::vector<Rational> x(unknowns);
  for (std::size_t k = 0; k < r; ++k) x[pivot_col[k]] = rows[k][unknowns];
  return x;
}

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

DiffPoly2 star_expand(const std::vector<StarTerm>& terms, Truncation t) {
  DiffPoly2 out(t);
  for (const auto& term : terms) {
    std::vector<DiffPoly2> f;
    for (int d : term.factors) f.push_back(DiffPoly2::jet(d, 0, t));
    DiffPoly2 p = moyal_chain(f).shifted(term.eps, 0);
    p *= GaussianRational(term.coeff);
    out += p;
  }
  return out;
}

std::vector<StarTerm> star_factorize(const DiffPoly2& density, int n) {
  const Truncation& t = density.truncation();
  std::vector<StarTerm> ansatz;
  for (int g = 0; g <= n; ++g) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(2 * g, n + 1 - g, cur, comps);
    for (auto& c : comps) ansatz.push_back({Rational(1), 2 * g, c});
  }
  std::vector<DiffPoly2> basis;
  for (const auto& a : ansatz) basis.push_back(star_expand({a}, t));
  std::set<DMonomial> monos;
  for (const auto& [m, c] : density.terms()) monos.insert(m);
  for (const auto& b : basis) {
    for (const auto& [m, c] : b.terms()) monos.insert(m);
  }
  std::vector<std::vector<Rational>> rows;
  for (const auto& m : monos) {
    std::vector<Rational> re(ansatz.size() + 1), im(ansatz.size() + 1);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      GaussianRational c = basis[k].coefficient(m);
      re[k] = c.re();
      im[k] = c.im();
    }
    GaussianRational target = density.coefficient(m);
    re.back() = target.re();
    im.back() = target.im();
    rows.push_back(std::move(re));
    rows.push_back(std::move(im));
  }
  std::vector<Rational> x = solve_exact(std::move(rows), ansatz.size());
  std::vector<StarTerm> out;
  for (std::size_t k = 0; k < ansatz.size(); ++k) {
    if (sgn(x[k]) == 0) continue;
    ansatz[k].coeff = x[k];
    out.push_back(ansatz[k]);
  }
  if (!(star_expand(out, t) == density)) throw std::runtime_error("star factorization residual is nonzero");
  return out;
}

nlohmann::json star_terms_json(const std::vector<StarTerm>& terms) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : terms) {
    nlohmann::json factors = nlohmann::json::array();
    for (int d : t.factors) factors.push_back({d, 0});
    out.push_back({{"coeff", to_string(t.coeff)}, {"eps", t.eps}, {"starFactors", factors}});
  }
  return out;
}

DiffPoly2 flow_bracket(const DiffPoly2& P, const DiffPoly2& Q, const CommuteWindow& window) {
  // Every bracket term has differential degree deg(P-term) + deg(Q-term),
  // both >= 1, so inputs known to degree D-1 determine the bracket to D.
  Truncation t{window.max_diff_degree, window.max_diff_degree};
  auto lift = [&](const DiffPoly2& p) {
    DiffPoly2 out(t);
    DiffPoly2 kept = p.eps_at_most(window.max_eps);
    for (const auto& [m, c] : kept.terms()) out.add_term(m, c);
    return out;
  };
  DiffPoly2 p = lift(P), q = lift(Q);
  return (evolutionary_derivative(p, q) - evolutionary_derivative(q, p)).eps_at_most(window.max_eps);
}

bool flows_commute(int m, int n, const CommuteWindow& window) {
  FlowWindow fw{window.max_diff_degree - 1, -1};
  DiffPoly2 P = lax_flow_rhs(m, fw);
  DiffPoly2 Q = m == n ? P : lax_flow_rhs(n, fw);
  return flow_bracket(P, Q, window).is_zero();
}

}  // namespace ncdr
