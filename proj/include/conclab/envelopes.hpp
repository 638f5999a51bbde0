#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace conclab {

// Everything a bound formula needs: psi-scale K, exponent p, dimension n,
// and the named constants (c, c_p, c_tilde, C_tilde, ...).
struct EnvelopeParams {
  double K = 1.0;
  double p = 2.0;
  std::int64_t n = 2;
  std::map<std::string, double> constants;

  double constant(const std::string& name) const;
};

// Proof-traced preset for the subgaussian upper envelope (valid for
// t >= C' K sqrt(log n) with C' fitted downstream, never assumed).
inline constexpr double kExplicitSubgaussianC = 1.0 / 2048.0;

// min(1, exp(-c t^2 / (K^2 log(2 + K^2 n / t^2)))), both tails.
double subgaussian_envelope(const EnvelopeParams& params, double t);

enum class DominantTerm { psi_p_term, gaussian_term };

struct PsipEnvelopeValue {
  double value;
  DominantTerm dominant;
};

// min(1, 2 exp(-c_p t^p/K^p) + 2 exp(-c_p t^2/(K^2 (log n)^{2/p}))) with the
// larger of the two terms tagged.
PsipEnvelopeValue psip_envelope(const EnvelopeParams& params, double t);

enum class LowerEnvelopeKind { psip, subgaussian };

// c~ max(exp(-C~ t^2/(K^2 (log n)^{2/p})), exp(-C~ t^p/K^p))  (psip), or
// c~ exp(-C~ t^2/(K^2 log(2 + K^2 n/t^2)))                    (subgaussian),
// clamped to [0,1].
double lower_envelope(const EnvelopeParams& params, double t,
                      LowerEnvelopeKind kind);

struct Crossover {
  double t_no_concentration;  // K (log n)^{1/p}
  double t_switch;            // K (log n)^{2/(p(2-p))}
  bool switch_diverged;       // exponent blew up as p -> 2
};

Crossover regime_crossover(const EnvelopeParams& params);

// Truncation levels 2*2^k K (log n)^{1/p} and the weight sequence
// u_k = c~ 2^{-(2-p)|m-k|/4} normalized so that sum_k u_k = 1/2.
struct TruncationSchedule {
  int m = 0;
  std::vector<double> u;       // u[0] is u_1
  std::vector<double> levels;  // levels[0] is level for k=1
  double normalizer = 0.0;     // the c~ solving the sum identity
  bool degenerate_weights = false;  // p == 2: the series cannot sum to 1/2
};

TruncationSchedule truncation_schedule(const EnvelopeParams& params, double t);

}  // namespace conclab
