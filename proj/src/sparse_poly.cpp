#include "ncdr/sparse_poly.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ncdr {

bool GrlexLess::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return a < b;
}

SparsePoly::SparsePoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

SparsePoly SparsePoly::constant(std::vector<std::string> variables, const Rational& c) {
  SparsePoly p(std::move(variables));
  p.add_term(Exponents(p.arity(), 0), c);
  return p;
}

SparsePoly SparsePoly::variable(std::vector<std::string> variables, std::size_t index) {
  SparsePoly p(std::move(variables));
  if (index >= p.arity()) throw std::out_of_range("variable index");
  Exponents e(p.arity(), 0);
  e[index] = 1;
  p.add_term(e, Rational(1));
  return p;
}

Rational SparsePoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SparsePoly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != vars_.size()) throw std::invalid_argument("exponent arity mismatch");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int SparsePoly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

SparsePoly SparsePoly::truncated(int max_total_degree) const {
  SparsePoly out(vars_);
  for (const auto& [e, c] : terms_) {
    if (std::accumulate(e.begin(), e.end(), 0) <= max_total_degree) out.terms_.emplace(e, c);
  }
  return out;
}

Rational SparsePoly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != vars_.size()) throw std::invalid_argument("evaluation point arity mismatch");
  Rational total(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t k = 0; k < e.size(); ++k) term *= power(point[k], static_cast<unsigned>(e[k]));
    total += term;
  }
  return total;
}

void SparsePoly::require_same_variables(const SparsePoly& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("polynomials over different variable lists");
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  require_same_variables(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  require_same_variables(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

SparsePoly multiply_truncated(const SparsePoly& a, const SparsePoly& b, int max_total_degree) {
  a.require_same_variables(b);
  SparsePoly out(a.vars_);
  SparsePoly::Exponents e(a.arity());
  for (const auto& [ea, ca] : a.terms_) {
    int da = std::accumulate(ea.begin(), ea.end(), 0);
    for (const auto& [eb, cb] : b.terms_) {
      int db = std::accumulate(eb.begin(), eb.end(), 0);
      if (max_total_degree >= 0 && da + db > max_total_degree) break;  // grlex: later terms are larger
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) { return multiply_truncated(a, b, -1); }

nlohmann::json SparsePoly::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [e, c] : terms_) {
    std::string key;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (k) key += ",";
      key += std::to_string(e[k]);
    }
    out[key] = ncdr::to_string(c);
  }
  return out;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool is_const = std::accumulate(e.begin(), e.end(), 0) == 0;
    bool wrote = false;
    if (mag != 1 || is_const) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (wrote) os << "*";
      os << vars_[k];
      if (e[k] > 1) os << "^" << e[k];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace ncdr
