#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmiso/difference_rings.hpp"
#include "dmiso/matrix.hpp"

namespace dmiso {

enum class SolveVerdict { Solution, NoSolution, Inconclusive };
enum class NoSolutionReason {
  QthRootMissing,
  UnboundedCoefficientValuations,
  PrincipalPartViolation,
  IntegralityViolation,  // a forced coefficient has negative valuation (BOK)
  LinearObstruction      // y^q - a_0 y = c has no solution in the coefficient field
};

const char* solve_verdict_name(SolveVerdict v);
const char* no_solution_reason_name(NoSolutionReason r);

template <class K>
struct SolveOutcome {
  SolveVerdict verdict = SolveVerdict::Inconclusive;
  std::optional<NoSolutionReason> reason;
  RingTag tag = RingTag::BK;
  // The solution, or for NoSolution the coefficients forced so far.
  ZSeries<K> x;
  int64_t order_a = 0;
  int64_t precision = 0;  // z-precision reached
  bool unique = false;    // the B_K solution is forced coefficient by coefficient
  int kernel_dim = 0;     // F_q-dimension of {y : y^q = a_0 y} when ord(a) = 0
  std::optional<int64_t> witness_exponent;
  std::optional<K> witness_value;  // x_n^q for QthRootMissing, x_n otherwise
  std::optional<int64_t> witness_zeta;
  std::optional<GrowthCertificate> growth;
  std::optional<Membership> membership;
  std::string note;
};

// Solves sigma(x) = a x + b coefficientwise up to z^N and certifies
// membership of x in the ring named by tag.
template <class K>
SolveOutcome<K> solve_scalar(const ZSeries<K>& a, const ZSeries<K>& b, RingTag tag, int64_t N);

// Re-checks an outcome from its witness data only.
template <class K>
bool check_outcome(const ZSeries<K>& a, const ZSeries<K>& b, const SolveOutcome<K>& out, std::string* why = nullptr);

// F_q-space of v in (F_{q^{me}}[z]/z^N)^n with A sigma(v) = v.
struct FixedSpace {
  const FiniteField* field = nullptr;  // F_{q^{me}}
  uint32_t ext = 1;
  int64_t N = 0;
  size_t n = 0;
  std::vector<std::vector<ZFq>> basis;  // F_q-basis
  size_t dim_fq = 0;
  size_t module_rank = 0;  // dim V/zV over F_q
  bool free = false;       // V free over F_q[z]/z^N
};

FixedSpace tau_fixed_space(const SMat<Fq>& A, int64_t N, uint32_t e);

struct FrobeniusAction {
  SMat<Fq> matrix;  // over F_q[z]/z^N, acting on module_basis
  std::vector<std::vector<ZFq>> module_basis;
  bool invertible = false;
};

// Matrix of the q^m-power coefficient Frobenius on a free fixed space.
// NotStable when an image leaves the span.
FrobeniusAction frobenius_action(const FixedSpace& V, int64_t m);

struct MLambdaReport {
  int64_t s = 0, r = 1;
  int dim = 0;
  std::vector<std::string> steps;  // proof-structure checks that were carried out
  int root_depth = 0;              // J with q^J beyond every representable valuation
  int64_t candidates_tested = 0;
  bool counterexample = false;
};

// tau-invariants of the sigma-bundle M_{s/r} over the local field L.
MLambdaReport m_lambda_tau_dim(int64_t s, int64_t r, const LocalField& L, uint64_t seed);

extern template struct SolveOutcome<Fq>;
extern template struct SolveOutcome<Laurent>;

}  // namespace dmiso
