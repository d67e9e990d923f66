// Brute-force ground truth at desk scale: explicit finite abelian groups,
// PDS verification by difference counting, coset profiles, finite-field
// cyclotomy, clique partitions into line pencils, and verification of the
// partial-geometry axioms and of rigidity.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigidpg/params.hpp"

namespace rigidpg {

// Residue vector, componentwise less than the matching invariant factor.
using GroupElement = std::vector<std::uint32_t>;

// Direct product of cyclic groups Z_m1 x ... x Z_mr, every mi >= 2.
// Elements are indexed in mixed radix with component 0 least significant.
struct AbelianGroup {
  std::vector<std::uint32_t> invariant_factors;

  std::uint64_t order() const;
  GroupElement identity() const;
  std::uint64_t index_of(const GroupElement& e) const;
  GroupElement element_at(std::uint64_t index) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement subtract(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  std::uint64_t element_order(const GroupElement& a) const;
};

// A subset D of an explicit group, kept sorted by element index.
struct PdsCandidate {
  AbelianGroup group;
  std::vector<GroupElement> elements;
};

PdsCandidate make_pds_candidate(AbelianGroup group, std::vector<GroupElement> elements);

struct PdsViolation {
  std::string reason;
  GroupElement witness;
  std::uint64_t count = 0;
};

struct VerifyResult {
  std::optional<PdsParams> params;  // set iff D verifies as a PDS
  bool inverse_closed = false;
  std::optional<PdsViolation> violation;
  bool ok() const { return params.has_value(); }
};

// Counts all ordered differences of distinct elements of D and checks the
// counts are constant on D \ {e} and on G \ (D u {e}). Rejects groups
// larger than max_order.
VerifyResult verify_pds(const PdsCandidate& candidate, std::uint64_t max_order = 1000000);

struct NotASubgroup : std::runtime_error {
  explicit NotASubgroup(const std::string& what) : std::runtime_error(what) {}
};

// k1 = |N n D| and the counts B_i = |Nh_i n D| over the nontrivial cosets,
// ordered by ascending smallest element index of the coset.
struct CosetProfile {
  std::uint64_t k1 = 0;
  std::vector<std::uint64_t> counts;
};

CosetProfile coset_profile(const PdsCandidate& candidate,
                           const std::vector<GroupElement>& subgroup);

// True iff no element of D has order two.
bool involution_free(const PdsCandidate& candidate);

// GF(p^f) with a fixed construction convention: modulus is the
// lexicographically least monic irreducible of degree f (coefficients
// compared from the highest degree down) and the primitive element is the
// least element of full multiplicative order. Elements are encoded as
// integers in [0, q) whose base-p digit i is the coefficient of x^i.
struct FiniteField {
  std::uint32_t p = 0;
  std::uint32_t f = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // monic, low degree first, size f+1
  std::uint32_t primitive_element = 0;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  // The element as a point of the additive group Z_p^f.
  GroupElement to_additive(std::uint32_t a) const;
};

FiniteField make_field(std::uint32_t p, std::uint32_t f);

struct CyclotomicClassSet {
  FiniteField field;
  std::uint32_t ord_e = 0;
  // class i = { g^(ord_e*j + i) : j }, each of size (q-1)/ord_e
  std::vector<std::vector<std::uint32_t>> classes;
};

// Requires ord_e | p^f - 1.
CyclotomicClassSet cyclotomic_classes(std::uint32_t p, std::uint32_t f, std::uint32_t ord_e);

// Exhaustively tests every union of target.k / class-size classes against
// the target parameters; returns the matching index subsets in
// lexicographic order. Empty result is a valid answer.
std::vector<std::vector<std::uint32_t>> find_cyclotomic_pds(const CyclotomicClassSet& classes,
                                                            const PdsParams& target);

PdsCandidate candidate_from_classes(const CyclotomicClassSet& classes,
                                    const std::vector<std::uint32_t>& index_subset);

// Partitions of D into blocks of size line_size-1 that are cliques of
// Cay(G, D), enumerated by backtracking in lexicographic element order,
// at most `limit` of them. Requires (line_size-1) | |D|.
std::vector<std::vector<std::vector<GroupElement>>> partition_into_lines(
    const PdsCandidate& candidate, std::uint32_t line_size, std::size_t limit);

// A point-line geometry over the group: lines are sorted point-index
// vectors, the line list itself sorted lexicographically.
struct Geometry {
  AbelianGroup group;
  std::vector<std::vector<std::uint64_t>> lines;
};

// lines = { g + ({e} u block) : g in G, block }, duplicates collapsed.
Geometry build_geometry(const PdsCandidate& candidate,
                        const std::vector<std::vector<GroupElement>>& blocks);

struct PgCheck {
  bool ok = false;
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  std::uint64_t alpha = 0;
  bool proper = false;
  std::string violation;  // first failing axiom and witness when !ok
};

// Verifies constant line size, constant point degree, pairwise line
// intersection <= 1 and a constant alpha over all anti-flags.
PgCheck check_pg_axioms(const Geometry& geometry);

// True iff every line has a trivial stabilizer under translation.
bool check_rigid(const Geometry& geometry);

// The full Sylow p-subgroup of the group, sorted by element index.
std::vector<GroupElement> sylow_subgroup(const AbelianGroup& group, std::uint32_t p);

// All subgroups of an elementary abelian group (every invariant factor the
// same prime), as subspaces; order capped at 6561 elements.
std::vector<std::vector<GroupElement>> all_subgroups_elementary(const AbelianGroup& group);

// PDS file format: line 1 holds the comma-separated invariant factors,
// each later non-empty line one element as comma-separated residues,
// '#' starts a comment.
PdsCandidate read_pds_file(std::istream& in);
void write_pds_file(std::ostream& out, const PdsCandidate& candidate);

}  // namespace rigidpg
