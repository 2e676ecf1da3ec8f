#pragma once

#include <cmath>
#include <istream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdlimits/asymptotics.hpp"
#include "pdlimits/multiprec.hpp"
#include "pdlimits/special.hpp"
#include "pdlimits/types.hpp"

namespace pdl {

/// m_i = (1/i) sum_{d|i} mu(d) q^{i/d}: the number of monic irreducible
/// polynomials of degree i over F_q (equivalently, aperiodic necklaces).
inline std::vector<Integer> necklace_counts(int q, int N) {
  if (q < 2) throw std::domain_error("necklace_counts: q must be >= 2");
  if (N < 1) throw std::domain_error("necklace_counts: N must be >= 1");
  // mu via smallest-prime-factor sieve
  std::vector<int> mu(N + 1, 1), spf(N + 1, 0);
  for (int i = 2; i <= N; ++i) {
    if (spf[i] == 0)
      for (int j = i; j <= N; j += i)
        if (spf[j] == 0) spf[j] = i;
  }
  for (int i = 2; i <= N; ++i) {
    int x = i, last = 0;
    int m = 1;
    while (x > 1) {
      const int p = spf[x];
      if (p == last) {
        m = 0;
        break;
      }
      m = -m;
      last = p;
      x /= p;
    }
    mu[i] = m;
  }
  std::vector<Integer> out(N);
  const Integer base = q;
  for (int i = 1; i <= N; ++i) {
    Integer acc = 0;
    for (int d = 1; d * d <= i; ++d) {
      if (i % d != 0) continue;
      const int e = i / d;
      if (mu[d] != 0) acc += mu[d] * boost::multiprecision::pow(base, e);
      if (d != e && mu[e] != 0) acc += mu[e] * boost::multiprecision::pow(base, d);
    }
    if (acc % i != 0) throw std::logic_error("necklace_counts: Mobius sum not divisible");
    out[i - 1] = acc / i;
  }
  return out;
}

enum class MSource { permutation, necklace, uniform, custom };

/// A family of decomposable objects: the construction, the irreducible
/// counts m_i, the tilt phi, and (for built-ins) singularity metadata.
/// Immutable once built; m values are produced on demand.
class FamilySpec {
 public:
  static FamilySpec permutation(const Rational& phi) {
    FamilySpec f;
    f.kind_ = ConstructionKind::assembly;
    f.source_ = MSource::permutation;
    f.phi_ = phi;
    f.singular_ = SingularData{Rational(1), 1.0, 0.0, phi};
    f.validate();
    return f;
  }

  static FamilySpec polynomial(ConstructionKind kind, int q, const Rational& phi) {
    if (kind == ConstructionKind::assembly)
      throw std::domain_error("polynomial families are multisets or selections");
    FamilySpec f;
    f.kind_ = kind;
    f.source_ = MSource::necklace;
    f.q_ = q;
    f.phi_ = phi;
    f.small_m_ = necklace_counts(q, kSmallM);
    f.memo_->values = f.small_m_;
    const auto lam = estimate_lambda([&f](long long i) { return f.log_m(i); },
                                     1.0 / q, 1.0);
    f.lambda_disagreement_ = lam.pair_disagreement;
    f.singular_ = SingularData{Rational(1, q), 1.0, lam.lambda, phi};
    f.validate();
    return f;
  }

  static FamilySpec uniform(ConstructionKind kind, const Integer& c, const Rational& phi) {
    if (c < 1) throw std::domain_error("uniform family: c must be >= 1");
    FamilySpec f;
    f.kind_ = kind;
    f.source_ = MSource::uniform;
    f.uniform_c_ = c;
    f.phi_ = phi;
    f.validate();
    return f;
  }

  /// Custom m_1..m_N; carries no singular data, so asymptotic predictions
  /// are unavailable (callers would have to assert FS1-FS3 themselves).
  static FamilySpec custom(ConstructionKind kind, std::vector<Integer> m, const Rational& phi) {
    FamilySpec f;
    f.kind_ = kind;
    f.source_ = MSource::custom;
    f.custom_m_ = std::move(m);
    f.phi_ = phi;
    for (const auto& v : f.custom_m_)
      if (v < 0) throw std::domain_error("custom family: negative m_i");
    f.validate();
    return f;
  }

  ConstructionKind kind() const { return kind_; }
  MSource source() const { return source_; }
  const Rational& phi() const { return phi_; }
  int q() const { return q_; }
  const std::optional<SingularData>& singular() const { return singular_; }
  double lambda_disagreement() const { return lambda_disagreement_; }

  /// Lazily extended, internally synchronized memo: repeated queries cost
  /// one lock plus a lookup, and growth is incremental (one big-integer
  /// multiply per new factorial, one batch per necklace extension).
  Integer m(long long i) const {
    if (i < 1) throw std::domain_error("FamilySpec::m: i must be >= 1");
    switch (source_) {
      case MSource::permutation:
      case MSource::necklace: {
        std::lock_guard<std::mutex> lk(memo_->mu);
        extend_locked(static_cast<int>(i));
        return memo_->values[i - 1];
      }
      case MSource::uniform: return uniform_c_;
      case MSource::custom:
        // a custom family IS its finite universe: no kinds beyond the data
        if (i > static_cast<long long>(custom_m_.size())) return 0;
        return custom_m_[i - 1];
    }
    throw std::logic_error("unreachable");
  }

  std::vector<Integer> m_values(int N) const {
    if (source_ == MSource::permutation || source_ == MSource::necklace) {
      std::lock_guard<std::mutex> lk(memo_->mu);
      extend_locked(N);
      return {memo_->values.begin(), memo_->values.begin() + N};
    }
    std::vector<Integer> out(N);
    for (int i = 1; i <= N; ++i) out[i - 1] = m(i);
    return out;
  }

  /// log m_i in double, stable for arbitrarily large i (needed by the DP
  /// sampler and the lambda estimator).  -inf encodes m_i = 0.
  double log_m(long long i) const {
    if (i < 1) throw std::domain_error("FamilySpec::log_m: i must be >= 1");
    switch (source_) {
      case MSource::permutation: return std::lgamma(static_cast<double>(i));
      case MSource::necklace: {
        if (i <= static_cast<long long>(small_m_.size())) {
          const Integer& v = small_m_[i - 1];
          return v == 0 ? -std::numeric_limits<double>::infinity() : log_double(v);
        }
        // corrections q^{i/d - i} are below double resolution out here
        return static_cast<double>(i) * std::log(static_cast<double>(q_)) -
               std::log(static_cast<double>(i));
      }
      case MSource::uniform: return log_double(uniform_c_);
      case MSource::custom: {
        if (i > static_cast<long long>(custom_m_.size()))
          return -std::numeric_limits<double>::infinity();
        const Integer& v = custom_m_[i - 1];
        return v == 0 ? -std::numeric_limits<double>::infinity() : log_double(v);
      }
    }
    throw std::logic_error("unreachable");
  }

  std::string name() const {
    switch (source_) {
      case MSource::permutation: return "permutation";
      case MSource::necklace:
        return std::string(kind_ == ConstructionKind::multiset ? "polynomial-multiset-F"
                                                               : "polynomial-selection-F") +
               std::to_string(q_);
      case MSource::uniform: return "uniform";
      case MSource::custom: return "custom";
    }
    return "?";
  }

 private:
  void validate() const {
    if (!(phi_ > 0)) throw std::domain_error("FamilySpec: phi must be positive");
    if (singular_) singular_->validate(kind_);
  }

  void extend_locked(int need) const {
    auto& vals = memo_->values;
    if (static_cast<int>(vals.size()) >= need) return;
    if (source_ == MSource::permutation) {
      if (vals.empty()) vals.push_back(1);  // m_1 = 0!
      while (static_cast<int>(vals.size()) < need)
        vals.push_back(vals.back() * static_cast<int>(vals.size()));
    } else {
      // grow geometrically so repeated +1 queries stay amortized cheap
      const int target = std::max(need, static_cast<int>(vals.size()) * 2);
      vals = necklace_counts(q_, std::max(target, kSmallM));
    }
  }

  static constexpr int kSmallM = 256;

  struct Memo {
    std::mutex mu;
    std::vector<Integer> values;
  };

  ConstructionKind kind_ = ConstructionKind::assembly;
  MSource source_ = MSource::permutation;
  Rational phi_ = 1;
  int q_ = 2;
  Integer uniform_c_ = 1;
  std::vector<Integer> small_m_;
  std::vector<Integer> custom_m_;
  std::optional<SingularData> singular_;
  double lambda_disagreement_ = 0.0;
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

/// Named constructors used by the CLI:
///   permutation | polynomial-multiset-Fq | polynomial-selection-Fq | custom-csv
inline FamilySpec builtin_family(const std::string& name, const Rational& phi, int q = 2,
                                 const std::vector<Integer>& custom_m = {},
                                 ConstructionKind custom_kind = ConstructionKind::multiset) {
  if (name == "permutation") return FamilySpec::permutation(phi);
  if (name == "polynomial-multiset-Fq")
    return FamilySpec::polynomial(ConstructionKind::multiset, q, phi);
  if (name == "polynomial-selection-Fq")
    return FamilySpec::polynomial(ConstructionKind::selection, q, phi);
  if (name == "custom-csv") return FamilySpec::custom(custom_kind, custom_m, phi);
  throw std::domain_error("builtin_family: unknown family '" + name + "'");
}

/// CSV with rows "i,m_i" (header row optional); indices must be the
/// contiguous range 1..N and the counts exact non-negative integers.
inline std::vector<Integer> load_m_csv(std::istream& in) {
  std::vector<Integer> out;
  std::string line;
  long long expect = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("m CSV: missing comma");
    const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
    if (!a.empty() && !(a[0] >= '0' && a[0] <= '9')) continue;  // header
    const long long i = std::stoll(a);
    if (i != expect) throw std::invalid_argument("m CSV: indices must run 1..N contiguously");
    Integer v(b);
    if (v < 0) throw std::domain_error("m CSV: negative m_i");
    out.push_back(std::move(v));
    ++expect;
  }
  if (out.empty()) throw std::invalid_argument("m CSV: no rows");
  return out;
}

}  // namespace pdl
