#include "ncdr/diffpoly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ncdr {

int DMonomial::diff_degree() const {
  int d = 0;
  for (const Jet& j : jets) d += j.x + j.y;
  return d;
}

int DMonomial::y_degree() const {
  int d = 0;
  for (const Jet& j : jets) d += j.y;
  return d;
}

Truncation Truncation::meet(const Truncation& a, const Truncation& b) {
  return {std::min(a.max_diff_degree, b.max_diff_degree), std::min(a.max_mu, b.max_mu)};
}

DiffPoly2 DiffPoly2::constant(const GaussianRational& c, Truncation t) {
  DiffPoly2 p(t);
  p.add_term(DMonomial{}, c);
  return p;
}

DiffPoly2 DiffPoly2::jet(int kx, int ky, Truncation t) {
  DiffPoly2 p(t);
  DMonomial m;
  m.jets.push_back(Jet{static_cast<std::uint8_t>(kx), static_cast<std::uint8_t>(ky)});
  p.add_term(m, GaussianRational(1));
  return p;
}

void DiffPoly2::add_term(const DMonomial& m, const GaussianRational& c) {
  if (c.is_zero() || !trunc_.admits(m)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GaussianRational DiffPoly2::coefficient(const DMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

DiffPoly2 DiffPoly2::with_truncation(const Truncation& t) const {
  DiffPoly2 out(Truncation::meet(trunc_, t));
  for (const auto& [m, c] : terms_) {
    if (out.trunc_.admits(m)) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

DiffPoly2& DiffPoly2::operator+=(const DiffPoly2& o) {
  Truncation t = Truncation::meet(trunc_, o.trunc_);
  if (!(t == trunc_)) *this = with_truncation(t);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly2& DiffPoly2::operator-=(const DiffPoly2& o) {
  Truncation t = Truncation::meet(trunc_, o.trunc_);
  if (!(t == trunc_)) *this = with_truncation(t);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly2& DiffPoly2::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

DiffPoly2 DiffPoly2::operator-() const {
  DiffPoly2 out = *this;
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

DiffPoly2 operator*(const DiffPoly2& a, const DiffPoly2& b) {
  DiffPoly2 out(Truncation::meet(a.trunc_, b.trunc_));
  const Truncation& t = out.trunc_;
  DMonomial m;
  for (const auto& [ma, ca] : a.terms_) {
    int da = ma.diff_degree();
    if (da > t.max_diff_degree || ma.mu > t.max_mu) continue;
    for (const auto& [mb, cb] : b.terms_) {
      if (da + mb.diff_degree() > t.max_diff_degree || ma.mu + mb.mu > t.max_mu) continue;
      m.eps = ma.eps + mb.eps;
      m.mu = ma.mu + mb.mu;
      m.jets.clear();
      std::merge(ma.jets.begin(), ma.jets.end(), mb.jets.begin(), mb.jets.end(), std::back_inserter(m.jets));
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

DiffPoly2 DiffPoly2::shifted(int eps, int mu) const {
  DiffPoly2 out(trunc_);
  for (const auto& [m, c] : terms_) {
    DMonomial n = m;
    n.eps += eps;
    n.mu += mu;
    out.add_term(n, c);
  }
  return out;
}

namespace {

// Leibniz rule for a first-order total derivative in direction (dx, dy).
DiffPoly2 first_derivative(const DiffPoly2& p, int dx, int dy) {
  DiffPoly2 out(p.truncation());
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t k = 0; k < m.jets.size(); ++k) {
      if (k > 0 && m.jets[k] == m.jets[k - 1]) continue;
      std::size_t mult = 1;
      while (k + mult < m.jets.size() && m.jets[k + mult] == m.jets[k]) ++mult;
      DMonomial n = m;
      n.jets.erase(n.jets.begin() + static_cast<long>(k));
      Jet j{static_cast<std::uint8_t>(m.jets[k].x + dx), static_cast<std::uint8_t>(m.jets[k].y + dy)};
      n.jets.insert(std::upper_bound(n.jets.begin(), n.jets.end(), j), j);
      out.add_term(n, c * Rational(static_cast<long>(mult)));
    }
  }
  return out;
}

}  // namespace

DiffPoly2 DiffPoly2::dx() const { return first_derivative(*this, 1, 0); }
DiffPoly2 DiffPoly2::dy() const { return first_derivative(*this, 0, 1); }

DiffPoly2 DiffPoly2::derivative(int kx, int ky) const {
  DiffPoly2 out = *this;
  for (int k = 0; k < kx; ++k) out = out.dx();
  for (int k = 0; k < ky; ++k) out = out.dy();
  return out;
}

DiffPoly2 DiffPoly2::partial(Jet j) const {
  DiffPoly2 out(trunc_);
  for (const auto& [m, c] : terms_) {
    auto lo = std::lower_bound(m.jets.begin(), m.jets.end(), j);
    auto hi = std::upper_bound(m.jets.begin(), m.jets.end(), j);
    long mult = hi - lo;
    if (mult == 0) continue;
    DMonomial n = m;
    n.jets.erase(n.jets.begin() + (lo - m.jets.begin()));
    out.add_term(n, c * Rational(mult));
  }
  return out;
}

DiffPoly2 DiffPoly2::mu_zero() const {
  DiffPoly2 out(trunc_);
  for (const auto& [m, c] : terms_) {
    if (m.mu == 0) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

DiffPoly2 DiffPoly2::eps_at_most(int max_eps) const {
  DiffPoly2 out(trunc_);
  for (const auto& [m, c] : terms_) {
    if (m.eps <= max_eps) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

int DiffPoly2::min_eps() const {
  int v = INT_MAX;
  for (const auto& [m, c] : terms_) v = std::min(v, m.eps);
  return v;
}

int DiffPoly2::min_mu() const {
  int v = INT_MAX;
  for (const auto& [m, c] : terms_) v = std::min(v, m.mu);
  return v;
}

int DiffPoly2::min_diff_degree() const {
  int v = INT_MAX;
  for (const auto& [m, c] : terms_) v = std::min(v, m.diff_degree());
  return v;
}

bool DiffPoly2::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

nlohmann::json DiffPoly2::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : terms_) {
    nlohmann::json jets = nlohmann::json::array();
    for (const Jet& j : m.jets) jets.push_back({j.x, j.y});
    out.push_back({{"coeff", c.is_real() ? ncdr::to_string(c.re()) : c.to_string()},
                   {"eps", m.eps},
                   {"mu", m.mu},
                   {"jets", jets}});
  }
  return out;
}

std::string DiffPoly2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << (c.is_real() ? ncdr::to_string(c.re()) : c.to_string()) << ")";
    if (m.eps) os << "*eps^" << m.eps;
    if (m.mu) os << "*mu^" << m.mu;
    for (const Jet& j : m.jets) os << "*u_" << int(j.x) << "_" << int(j.y);
  }
  return os.str();
}

DiffPoly2 moyal(const DiffPoly2& f, const DiffPoly2& g) {
  Truncation t = Truncation::meet(f.truncation(), g.truncation());
  DiffPoly2 out(t);
  if (f.is_zero() || g.is_zero()) return out;
  // Order K contributes mu^K and raises the differential degree by 2K.
  int kmax = std::min(t.max_mu - f.min_mu() - g.min_mu(),
                      (t.max_diff_degree - f.min_diff_degree() - g.min_diff_degree()) / 2);
  if (kmax < 0) return out;
  auto table = [kmax](const DiffPoly2& p) {
    std::vector<std::vector<DiffPoly2>> T(kmax + 1);
    for (int a = 0; a <= kmax; ++a) {
      T[a].push_back(a == 0 ? p : T[a - 1][0].dx());
      for (int b = 1; a + b <= kmax; ++b) T[a].push_back(T[a][b - 1].dy());
    }
    return T;
  };
  const auto fd = table(f);
  const auto gd = table(g);
  for (int K = 0; K <= kmax; ++K) {
    GaussianRational iK = i_power(K);
    Rational base = Rational(1) / power(Rational(2), static_cast<unsigned>(K));
    for (int k1 = 0; k1 <= K; ++k1) {
      int k2 = K - k1;
      Rational c = base / Rational(factorial(k1) * factorial(k2));
      if (k2 % 2) c = -c;
      const DiffPoly2& F = fd[k1][k2];
      if (F.is_zero()) continue;
      const DiffPoly2& G = gd[k2][k1];
      if (G.is_zero()) continue;
      DiffPoly2 prod = (F * G).shifted(K, K);
      prod *= iK * c;
      out += prod;
    }
  }
  return out;
}

DiffPoly2 moyal_chain(const std::vector<DiffPoly2>& factors) {
  if (factors.empty()) return DiffPoly2::constant(GaussianRational(1));
  DiffPoly2 acc = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) acc = moyal(acc, factors[k]);
  return acc;
}

DiffPoly2 evolutionary_derivative(const DiffPoly2& P, const DiffPoly2& Q) {
  std::set<Jet> jets;
  for (const auto& [m, c] : Q.terms()) jets.insert(m.jets.begin(), m.jets.end());
  DiffPoly2 out(Truncation::meet(P.truncation(), Q.truncation()));
  for (const Jet& j : jets) out += Q.partial(j) * P.derivative(j.x, j.y);
  return out;
}

}  // namespace ncdr
