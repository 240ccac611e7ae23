#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncdr/rational.hpp"

namespace ncdr {

/// Graded lexicographic order on exponent vectors: total degree first,
/// then lexicographic on the fixed variable order.
struct GrlexLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

/// Multivariate polynomial over Rational in a fixed, named variable list.
/// Zero coefficients are never stored.
class SparsePoly {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  explicit SparsePoly(std::vector<std::string> variables = {});

  static SparsePoly constant(std::vector<std::string> variables, const Rational& c);

  /// The polynomial consisting of the single variable at `index`.
  static SparsePoly variable(std::vector<std::string> variables, std::size_t index);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t arity() const { return vars_.size(); }

  /// Coefficient of the given monomial (zero when absent).
  Rational coefficient(const Exponents& e) const;

  /// Adds c times the monomial; drops the term if the sum cancels.
  void add_term(const Exponents& e, const Rational& c);

  int total_degree() const;
  SparsePoly truncated(int max_total_degree) const;
  Rational evaluate(const std::vector<Rational>& point) const;

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const Rational& s);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(SparsePoly a, const Rational& s) { return a *= s; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  /// Product with every term of total degree above the bound discarded.
  friend SparsePoly multiply_truncated(const SparsePoly& a, const SparsePoly& b, int max_total_degree);

  /// Map from comma-joined exponent strings to coefficient strings.
  nlohmann::json to_json() const;

  /// Human-readable rendering such as "1/12*a^2 - 1/12".
  std::string to_string() const;

 private:
  void require_same_variables(const SparsePoly& o) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

}  // namespace ncdr
