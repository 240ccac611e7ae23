#include "ncdr/psi.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ncdr {

std::size_t PsiKeyHash::operator()(const PsiKey& k) const noexcept {
  std::size_t h = static_cast<std::size_t>(k.genus) * 0x9e3779b97f4a7c15ULL;
  for (int d : k.exponents) h = (h ^ static_cast<std::size_t>(d + 1)) * 0x100000001b3ULL;
  return h;
}

namespace {

bool dimension_ok(int g, const std::vector<int>& d) {
  int n = static_cast<int>(d.size());
  return std::accumulate(d.begin(), d.end(), 0) == 3 * g - 3 + n;
}

bool stable(int g, int n) { return 2 * g - 2 + n > 0; }

}  // namespace

PsiTable& default_psi_table() {
  static PsiTable table;
  return table;
}

Rational psi_correlator(int genus, std::span<const int> exponents) {
  return default_psi_table().correlator(genus, exponents);
}

Rational PsiTable::correlator(int genus, std::span<const int> exponents) {
  if (genus < 0) throw std::domain_error("negative genus");
  for (int d : exponents) {
    if (d < 0) throw std::domain_error("negative psi exponent");
  }
  if (!stable(genus, static_cast<int>(exponents.size()))) {
    throw std::domain_error("psi_correlator: unstable (g, n)");
  }
  return lookup(genus, std::vector<int>(exponents.begin(), exponents.end()));
}

Rational PsiTable::lookup(int genus, std::vector<int> d) {
  // Unstable or negative-index correlators are zero inside the recursion.
  if (genus < 0 || !stable(genus, static_cast<int>(d.size()))) return Rational(0);
  for (int x : d) {
    if (x < 0) return Rational(0);
  }
  if (!dimension_ok(genus, d)) return Rational(0);
  std::sort(d.begin(), d.end());
  PsiKey key{genus, d};
  {
    std::shared_lock lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  Rational value = compute(genus, d);
  bool fresh = false;
  {
    std::unique_lock lock(mu_);
    fresh = memo_.emplace(key, value).second;
  }
  if (fresh) {
    std::lock_guard lock(file_mu_);
    if (cache_out_.is_open()) {
      cache_out_ << format_psi_cache_line(key, value) << '\n';
      cache_out_.flush();
    }
  }
  return value;
}

Rational PsiTable::compute(int g, std::vector<int> d) {
  const int n = static_cast<int>(d.size());
  if (g == 0 && n == 3) return Rational(1);                // <tau_0^3>_0
  if (g == 1 && n == 1) return make_rational(1, 24);       // <tau_1>_1

  // Apply DVV to the largest exponent, written tau_{k+1} with k >= -1.
  const int top = d.back();
  d.pop_back();
  const int k = top - 1;
  const int m = n - 1;
  Rational sum(0);

  for (int j = 0; j < m; ++j) {
    if (d[j] + k < 0) continue;
    std::vector<int> e = d;
    e[j] = d[j] + k;
    Rational coeff = Rational(double_factorial(2 * k + 2 * d[j] + 1)) / Rational(double_factorial(2 * d[j] - 1));
    sum += coeff * lookup(g, e);
  }

  Rational half_sum(0);
  for (int r = 0; r <= k - 1; ++r) {
    int s = k - 1 - r;
    Rational w = Rational(double_factorial(2 * r + 1) * double_factorial(2 * s + 1));
    std::vector<int> e = d;
    e.push_back(r);
    e.push_back(s);
    Rational term = lookup(g - 1, e);
    // All splittings of the remaining points and genus.
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::vector<int> left{r}, right{s};
      for (int j = 0; j < m; ++j) ((mask >> j) & 1u ? left : right).push_back(d[j]);
      for (int g1 = 0; g1 <= g; ++g1) {
        Rational a = lookup(g1, left);
        if (sgn(a) == 0) continue;
        term += a * lookup(g - g1, right);
      }
    }
    half_sum += w * term;
  }
  sum += half_sum / 2;
  return sum / Rational(double_factorial(2 * k + 3));
}

void PsiTable::attach_cache(const std::filesystem::path& file) {
  std::lock_guard flock(file_mu_);
  if (cache_out_.is_open()) cache_out_.close();
  if (std::filesystem::exists(file)) {
    std::ifstream in(file);
    std::string line;
    std::unique_lock lock(mu_);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto [key, value] = parse_psi_cache_line(line);
      memo_.emplace(std::move(key), value);
    }
  }
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  cache_out_.open(file, std::ios::app);
  if (!cache_out_) throw std::runtime_error("cannot open psi cache file " + file.string());
}

std::size_t PsiTable::size() const {
  std::shared_lock lock(mu_);
  return memo_.size();
}

std::vector<std::pair<PsiKey, Rational>> PsiTable::entries() const {
  std::shared_lock lock(mu_);
  std::vector<std::pair<PsiKey, Rational>> out(memo_.begin(), memo_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.genus, a.first.exponents) < std::tie(b.first.genus, b.first.exponents);
  });
  return out;
}

void PsiTable::clear() {
  std::unique_lock lock(mu_);
  memo_.clear();
}

bool check_string_dilaton(int g, std::span<const int> exponents) {
  std::vector<int> d(exponents.begin(), exponents.end());
  const int n = static_cast<int>(d.size());
  if (!stable(g, n)) throw std::domain_error("check_string_dilaton: unstable (g, n)");
  PsiTable& table = default_psi_table();

  std::vector<int> with0 = d;
  with0.push_back(0);
  Rational string_rhs(0);
  for (int j = 0; j < n; ++j) {
    if (d[j] == 0) continue;
    std::vector<int> e = d;
    --e[j];
    string_rhs += table.correlator(g, e);
  }
  if (table.correlator(g, with0) != string_rhs) return false;

  std::vector<int> with1 = d;
  with1.push_back(1);
  return table.correlator(g, with1) == Rational(2 * g - 2 + n) * table.correlator(g, d);
}

std::size_t check_string_dilaton_range(int max_genus, int max_n) {
  std::size_t failures = 0;
  for (int g = 0; g <= max_genus; ++g) {
    for (int n = 1; n + 1 <= max_n; ++n) {
      if (!stable(g, n)) continue;
      // Smaller side of the string equation has total degree dim + 1, the
      // dilaton side has total dim; enumerate sorted multisets of both.
      for (int total : {3 * g - 3 + n, 3 * g - 3 + n + 1}) {
        if (total < 0) continue;
        std::vector<int> d(n, 0);
        std::function<void(int, int, int)> rec = [&](int pos, int remaining, int min_value) {
          if (pos == n) {
            if (remaining == 0 && !check_string_dilaton(g, d)) ++failures;
            return;
          }
          for (int v = min_value; v * (n - pos) <= remaining; ++v) {
            d[pos] = v;
            rec(pos + 1, remaining - v, v);
          }
        };
        rec(0, total, 0);
      }
    }
  }
  return failures;
}

std::pair<PsiKey, Rational> parse_psi_cache_line(const std::string& line) {
  auto first = line.find(';');
  auto second = line.find(';', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw std::invalid_argument("malformed psi cache line: " + line);
  }
  PsiKey key;
  key.genus = std::stoi(line.substr(0, first));
  std::string exps = line.substr(first + 1, second - first - 1);
  std::stringstream ss(exps);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) key.exponents.push_back(std::stoi(tok));
  }
  std::sort(key.exponents.begin(), key.exponents.end());
  return {key, parse_rational(line.substr(second + 1))};
}

std::string format_psi_cache_line(const PsiKey& key, const Rational& value) {
  std::string out = std::to_string(key.genus) + ";";
  for (std::size_t k = 0; k < key.exponents.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(key.exponents[k]);
  }
  out += ";" + to_string(value);
  return out;
}

}  // namespace ncdr
