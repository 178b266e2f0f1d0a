#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "padicbetti/integer.hpp"

namespace padicbetti {

enum class LimitStatus { converged, growth_detected, insufficient_data };

std::string_view to_string(LimitStatus status);
LimitStatus limit_status_from_string(std::string_view s);

/// A p-adic integer known modulo p^precision, or a marker that no such
/// residue was witnessed.
///
/// Only `converged` values carry a residue. The other two statuses report
/// precision 0 and residue 0: nothing is claimed about the digits.
class PAdicApprox {
 public:
  static PAdicApprox converged(unsigned long p, unsigned precision, const Integer& value);
  static PAdicApprox growth_detected(unsigned long p);
  static PAdicApprox insufficient_data(unsigned long p);

  unsigned long prime() const { return prime_; }
  unsigned precision() const { return precision_; }
  const Integer& residue() const { return residue_; }
  LimitStatus status() const { return status_; }
  bool is_converged() const { return status_ == LimitStatus::converged; }

  Integer modulus() const { return ipow(prime_, precision_); }

  // Same value reduced to a lower precision.
  PAdicApprox truncated(unsigned precision) const;

  // Residue congruence at the common precision of both values.
  bool agrees_with(const PAdicApprox& other) const;

  friend bool operator==(const PAdicApprox&, const PAdicApprox&) = default;

 private:
  PAdicApprox(unsigned long p, unsigned precision, Integer residue, LimitStatus status)
      : prime_(p), precision_(precision), residue_(std::move(residue)), status_(status) {}

  unsigned long prime_;
  unsigned precision_;
  Integer residue_;
  LimitStatus status_;
};

/// ‖G:K‖: the exact index when K is open, otherwise the p-adic limit of
/// |G:N_n K| (which is 0 for non-open K).
struct PAdicIndex {
  PAdicApprox value;
  bool is_open = false;
  std::optional<Integer> exact;  // set iff is_open
};

/// p-adic valuation of a nonzero integer.
unsigned vp(const Integer& x, unsigned long p);

/// x / p^vp(x); keeps the sign.
Integer p_prime_part(const Integer& x, unsigned long p);

inline constexpr unsigned kDefaultWindow = 3;

/// Detects the p-adic limit of an integer sequence from its trailing window.
///
/// The result is `converged` at the largest m <= target_precision for which
/// the last `window` terms agree modulo p^m. Without agreement even modulo p,
/// a window that is strictly increasing in absolute value and pairwise
/// distinct modulo p is reported as `growth_detected`.
PAdicApprox padic_limit(std::span<const Integer> seq, unsigned long p, unsigned target_precision,
                        unsigned window = kDefaultWindow);

/// ‖G:K‖ from the tower of indices |G:N_n K|.
PAdicIndex padic_index_from_tower(std::span<const Integer> indices, unsigned long p,
                                  unsigned target_precision, unsigned window = kDefaultWindow);

void require_prime(unsigned long p, std::string_view what = "p");

}  // namespace padicbetti
