#ifndef PROBEQ_CERTIFICATES_HPP
#define PROBEQ_CERTIFICATES_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "probeq/rv.hpp"

namespace probeq {

enum class CaseKind { Case1, Case2, Case3 };

/// Raised by certification when the two inputs are not equal in
/// distribution; carries the first mismatching atom.
struct DistributionsDiffer : std::runtime_error {
  explicit DistributionsDiffer(const std::string& what) : std::runtime_error(what) {}
};

/// Witness that y is a value-permutation of x on shared equiprobable
/// cells. pi_hat is oriented so y_values[i] == x_values[pi_hat[i]];
/// order_m is the lcm of its cycle lengths (so pi_hat^order_m = id), and
/// step_lottery stores the canonical multiset of (x, y) value pairs, each
/// carried by one cell of measure 1/n_cells.
struct PermutationChainCertificate {
  std::size_t n_cells = 0;
  std::vector<Event> cells;
  std::vector<Rat> x_values;
  std::vector<Rat> y_values;
  std::vector<std::size_t> pi_hat;
  Int order_m;
  std::vector<std::pair<Rat, Rat>> step_lottery;  // sorted lexicographically
};

/// Case 2 witness: the common refinement has rational cell measures with
/// common denominator N; each refinement cell is split left-to-right into
/// subcells of measure exactly 1/N, and the chain certificate lives on
/// those subcells (chain.cells). parent_of maps subcells to their
/// refinement cell.
struct RefinementCertificate {
  std::int64_t common_denominator = 0;
  std::vector<RefinementCell> refinement_cells;
  std::vector<std::size_t> parent_of;
  PermutationChainCertificate chain;
};

/// One dyadic approximation level of the Case 3 construction.
struct DyadicRecord {
  struct Cell {
    Event event;
    std::size_t parent = 0;  // index into DyadicCertificate::refinement_cells
    bool remainder = false;
    friend bool operator==(const Cell& a, const Cell& b) = default;
  };

  int k = 0;
  std::vector<std::int64_t> nu_values;  // per refinement cell
  std::vector<Cell> cells;              // T^k, grouped by parent, remainder last
  SimpleRV x_k, y_k;                    // sentinel on remainders, X/Y elsewhere
  std::vector<std::size_t> x_flips;     // cell indices rewritten to the sentinel
  std::vector<std::size_t> y_flips;
  SimpleRV xbar, ybar;
  RefinementCertificate embedded;       // N = 2^k witness for (xbar, ybar)
  Rat bound_diff;                       // m / 2^k
  Rat bound_change;                     // m^2 / 2^k
};

struct DyadicCertificate {
  int k_min = 0;
  int k_max = 0;
  std::vector<RefinementCell> refinement_cells;  // T_j of the canonical pair
  Rat sentinel;                                  // c, outside the outcome set
  std::vector<DyadicRecord> records;             // one per k in [k_min, k_max]
};

struct EquivalenceCertificate {
  int schema_version = 1;
  CaseKind kind = CaseKind::Case1;
  Distribution dist;  // the common distribution of the input pair
  std::variant<PermutationChainCertificate, RefinementCertificate, DyadicCertificate>
      payload;
};

struct CertifyConfig {
  int k_min = 0;  // 0 = smallest k with 1/2^k < min refinement-cell measure
  int k_max = 0;  // 0 = k_min + 12
};

/// Classifies the canonicalized pair: Case1 when the outcome-level
/// partitions coincide with rational measures 1/n, Case2 when all
/// refinement-cell measures are rational, Case3 otherwise. Requires equal
/// distributions.
CaseKind classify_case(const SimpleRV& x, const SimpleRV& y);

/// Builds the permutation witness from x and y as given (no
/// canonicalization): cells must coincide and be equiprobable, and the
/// outcome multisets must match. Repeated outcomes are matched fixed
/// points first, then in cell-index order.
PermutationChainCertificate build_case1(const SimpleRV& x, const SimpleRV& y);

/// Splits the common refinement of x and y (as given) into equiprobable
/// subcells and chains them. forced_denominator overrides the lcm choice
/// (it must be a common denominator of the cell measures).
RefinementCertificate build_case2(const SimpleRV& x, const SimpleRV& y,
                                  std::int64_t forced_denominator = 0);

/// Full dyadic construction for pairs with an irrational refinement-cell
/// measure, one record per k in [k_min, k_max].
DyadicCertificate build_case3(const SimpleRV& x, const SimpleRV& y, int k_min,
                              int k_max);

EquivalenceCertificate certify_equivalence(const SimpleRV& x, const SimpleRV& y,
                                           const CertifyConfig& config = {});

struct VerificationItem {
  std::string name;    // stable obligation id, e.g. "chain.pi_bijection"
  bool ok = false;
  std::string detail;  // context: k level, first offending index, measures
};

struct VerificationReport {
  std::vector<VerificationItem> items;
  bool ok() const;
  /// First failed item name, or empty when all pass.
  std::string first_failure() const;
};

/// Re-checks every certificate obligation against x and y with exact
/// arithmetic. Never errors; failures are items in the report.
VerificationReport verify_certificate(const EquivalenceCertificate& cert,
                                      const SimpleRV& x, const SimpleRV& y);

/// Deterministic sentinel choice: midpoint of the widest gap between
/// consecutive sorted outcomes within the bounds (boundary gaps count).
Rat pick_sentinel(const std::vector<Rat>& outcomes, const OutcomeBounds& bounds);

}  // namespace probeq

#endif
