#pragma once

// Stabilization of graded ring isomorphisms by realizable moves.
//
// Given phi : H*(B_n(A)) -> H*(B_n(B)) that is k-stable but not (k+1)-stable,
// switches and twists on the target (and, in the odd case, on the source)
// push phi(x_{k+1}) down the filtration until the composite is (k+1)- or
// (k+2)-stable. Repeating this reaches stability n-2 or n-1. Every asserted
// intermediate fact is checked at runtime; a failed check throws
// ContractViolation / ProofPathViolation and never yields a certificate.

#include "bott/iso.hpp"
#include "bott/moves.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bott {

/// phi(x_{k+1}) = eps (2y_ell - bar_beta_ell) + w with w in F_k(B).
struct XkDecomposition {
  int ell = 0;
  Half eps;
  IntVector w;
};

/// nullopt when phi(x_{k+1}) already lies in F_{k+1}(B). Throws
/// PreconditionError if phi is not k-stable, DecompositionInconsistent if the
/// coefficients between k and ell do not match -eps * b_{ell,j}.
std::optional<XkDecomposition> decompose_xk(const GradedIso& phi, int k);

enum class KeyCase { Zero, Even, Odd };
std::string to_string(KeyCase c);

struct KeyStepTrace {
  int k = 0;
  int ell = 0;
  Integer p;  // b_{ell, ell-1}
  Half eps;
  IntVector w;
  HalfClass2 u;
  KeyCase kind = KeyCase::Zero;
  BottMatrix before;  // target matrix before the step
  BottMatrix after;
  std::vector<MoveSpec> moves;
  int new_height = 0;  // height of the new image of x_{k+1}
};

struct KeyStepResult {
  MoveSeq g;  // moves on the target of phi
  GradedIso phi_new;
  KeyStepTrace trace;
};

/// One height-reduction step. Requires phi k-stable with ell > k+1; throws
/// OddAtBoundary when p is odd and ell = k+2.
KeyStepResult key_step(const GradedIso& phi, int k);

enum class Side { Target, Source };

/// A parity or block fact the odd-case argument relies on, as asserted.
struct BlockClaim {
  std::string rule;  // which fact is claimed
  BottMatrix matrix;
  int i = 0;
  int j = 0;
  bool holds = true;  // claimed value of same_block(matrix, i, j) or of the parity test
};

struct StepRecord {
  Side side = Side::Target;
  KeyStepTrace trace;
};

struct RaiseTrace {
  int k = 0;
  int reached = 0;          // k+1 or k+2
  bool source_detour = false;
  std::vector<StepRecord> steps;
  std::vector<BlockClaim> claims;
};

struct RaiseResult {
  MoveSeq f;  // source side, from A' to A
  MoveSeq g;  // target side, from B to B'
  GradedIso phi_prime;  // g o phi o f
  RaiseTrace trace;
};

/// Requires phi k-stable with k < n. The result is (k+1)- or (k+2)-stable.
RaiseResult raise_stability(const GradedIso& phi, int k);

inline constexpr int kCertificateSchemaVersion = 1;

struct StabilizationCertificate {
  BottMatrix a;
  BottMatrix b;
  GradedIso phi;
  MoveSeq f_seq;  // from A' to A
  MoveSeq g_seq;  // from B to B'
  GradedIso phi_prime;
  int k_final = 0;
  std::vector<RaiseTrace> trace;
};

/// Repeats raise_stability from max_stable(phi) until stability >= n-2.
/// Throws NonTermination past n(n+2) key steps.
StabilizationCertificate stabilize_full(const GradedIso& phi);

/// Plain data of a certificate as serialized; nothing in it is trusted.
struct CertificateRecord {
  int schema_version = kCertificateSchemaVersion;
  BottMatrix a;
  BottMatrix b;
  IntMatrix phi;
  BottMatrix a_prime;
  BottMatrix b_prime;
  std::vector<MoveSpec> f_moves;  // applied starting from a_prime
  std::vector<MoveSpec> g_moves;  // applied starting from b
  IntMatrix phi_prime;
  int k_final = 0;
};

CertificateRecord to_record(const StabilizationCertificate& cert);

struct VerifyResult {
  bool valid = true;
  std::string diagnostic;
  explicit operator bool() const { return valid; }
};

/// Rebuilds both move chains from scratch and rechecks every claim.
VerifyResult verify_record(const CertificateRecord& record);
VerifyResult verify_certificate(const StabilizationCertificate& cert);

}  // namespace bott
