#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "ncdr/rational.hpp"

namespace ncdr {

// Key of a psi correlator <tau_{d_1} ... tau_{d_n}>_g with sorted exponents.
struct PsiKey {
  int genus = 0;
  std::vector<int> exponents;
  friend bool operator==(const PsiKey&, const PsiKey&) = default;
};

struct PsiKeyHash {
  std::size_t operator()(const PsiKey& k) const noexcept;
};

// Memoized table of psi intersection numbers, computed with the
// Dijkgraaf-Verlinde-Verlinde recursion on the largest exponent.
// Readers share the table; insertions take the exclusive lock.  An
// attached cache file is read once and then appended to.
class PsiTable {
 public:
  PsiTable() = default;
  PsiTable(const PsiTable&) = delete;
  PsiTable& operator=(const PsiTable&) = delete;

  // Throws std::domain_error unless 2g-2+n > 0.
  Rational correlator(int genus, std::span<const int> exponents);

  // Loads existing entries from `file` (if present) and appends new ones.
  void attach_cache(const std::filesystem::path& file);

  std::size_t size() const;
  std::vector<std::pair<PsiKey, Rational>> entries() const;
  void clear();

 private:
  Rational compute(int genus, std::vector<int> sorted);
  Rational lookup(int genus, std::vector<int> d);

  mutable std::shared_mutex mu_;
  std::unordered_map<PsiKey, Rational, PsiKeyHash> memo_;
  std::mutex file_mu_;
  std::ofstream cache_out_;
};

// Process-wide table used by the free functions below.
PsiTable& default_psi_table();

Rational psi_correlator(int genus, std::span<const int> exponents);
inline Rational psi_correlator(int genus, std::initializer_list<int> exponents) {
  return psi_correlator(genus, std::span<const int>(exponents.begin(), exponents.size()));
}

// Checks the string and dilaton equations with (g, d) as the smaller
// correlator: <tau_0 tau_d>_g against sum_j <..tau_{d_j-1}..>_g and
// <tau_1 tau_d>_g against (2g-2+n) <tau_d>_g.
bool check_string_dilaton(int genus, std::span<const int> exponents);

// Runs check_string_dilaton over every dimension-compatible exponent
// multiset with genus <= max_genus and n <= max_n - 1 (so that the larger
// side stays within n <= max_n).  Returns the number of failures.
std::size_t check_string_dilaton_range(int max_genus, int max_n);

// Parses one cache line "g;d1,...,dn;p/q".
std::pair<PsiKey, Rational> parse_psi_cache_line(const std::string& line);
std::string format_psi_cache_line(const PsiKey& key, const Rational& value);

}  // namespace ncdr
