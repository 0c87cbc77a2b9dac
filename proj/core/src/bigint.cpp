#include "ptbcache/bigint.hpp"

#include <limits>
#include <mutex>
#include <vector>

namespace ptb {

namespace {

// Pascal-triangle cache, grown on demand. Guarded so concurrent search
// workers can share it.
class BinomialCache {
 public:
  Int get(int n, int k) {
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(rows_.size()) <= n) {
      const int i = static_cast<int>(rows_.size());
      std::vector<Int> row(i + 1, Int(1));
      for (int j = 1; j < i; ++j) row[j] = rows_[i - 1][j - 1] + rows_[i - 1][j];
      rows_.push_back(std::move(row));
    }
    return rows_[n][k];
  }

 private:
  std::mutex mu_;
  std::vector<std::vector<Int>> rows_{{Int(1)}};
};

BinomialCache& cache() {
  static BinomialCache c;
  return c;
}

}  // namespace

Int binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  return cache().get(n, k);
}

Int falling_factorial(int n, int k) {
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}

std::string to_string(const Int& v) { return v.str(); }

std::string to_string(const Rat& v) {
  if (rat_den(v) == 1) return rat_num(v).str();
  return rat_num(v).str() + "/" + rat_den(v).str();
}

Int parse_int(const std::string& s) { return Int(s); }

Rat parse_rat(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

long long to_ll(const Int& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error("value does not fit in 64 bits: " + v.str());
  return static_cast<long long>(v);
}

}  // namespace ptb
