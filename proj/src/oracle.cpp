#include "rigidpg/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace rigidpg {
namespace {

std::string element_string(const GroupElement& e) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) os << ',';
    os << e[i];
  }
  os << ')';
  return os.str();
}

}  // namespace

std::uint64_t AbelianGroup::order() const {
  std::uint64_t n = 1;
  for (std::uint32_t m : invariant_factors) {
    if (m < 2) throw std::invalid_argument("AbelianGroup: invariant factors must be >= 2");
    n *= m;
  }
  return n;
}

GroupElement AbelianGroup::identity() const {
  return GroupElement(invariant_factors.size(), 0);
}

std::uint64_t AbelianGroup::index_of(const GroupElement& e) const {
  if (e.size() != invariant_factors.size())
    throw std::invalid_argument("GroupElement: wrong number of residues");
  std::uint64_t idx = 0, stride = 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] >= invariant_factors[i])
      throw std::invalid_argument("GroupElement: residue out of range");
    idx += stride * e[i];
    stride *= invariant_factors[i];
  }
  return idx;
}

GroupElement AbelianGroup::element_at(std::uint64_t index) const {
  GroupElement e(invariant_factors.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = static_cast<std::uint32_t>(index % invariant_factors[i]);
    index /= invariant_factors[i];
  }
  return e;
}

GroupElement AbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  GroupElement out(invariant_factors.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (a[i] + b[i]) % invariant_factors[i];
  return out;
}

GroupElement AbelianGroup::subtract(const GroupElement& a, const GroupElement& b) const {
  GroupElement out(invariant_factors.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (a[i] + invariant_factors[i] - b[i]) % invariant_factors[i];
  return out;
}

GroupElement AbelianGroup::negate(const GroupElement& a) const {
  return subtract(identity(), a);
}

std::uint64_t AbelianGroup::element_order(const GroupElement& a) const {
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint64_t m = invariant_factors[i];
    const std::uint64_t component = m / std::gcd<std::uint64_t>(m, a[i]);
    ord = std::lcm(ord, component);
  }
  return ord;
}

PdsCandidate make_pds_candidate(AbelianGroup group, std::vector<GroupElement> elements) {
  PdsCandidate c;
  c.group = std::move(group);
  std::vector<std::pair<std::uint64_t, GroupElement>> keyed;
  keyed.reserve(elements.size());
  for (GroupElement& e : elements) keyed.emplace_back(c.group.index_of(e), std::move(e));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  c.elements.reserve(keyed.size());
  for (auto& [idx, e] : keyed) c.elements.push_back(std::move(e));
  return c;
}

VerifyResult verify_pds(const PdsCandidate& candidate, std::uint64_t max_order) {
  const AbelianGroup& G = candidate.group;
  const std::uint64_t v = G.order();
  if (v > max_order)
    throw std::invalid_argument("verify_pds: group order exceeds the configured bound");

  VerifyResult res;
  std::vector<char> in_d(v, 0);
  for (const GroupElement& e : candidate.elements) {
    const std::uint64_t idx = G.index_of(e);
    if (idx == 0) {
      res.violation = {"identity element in D", e, 0};
      return res;
    }
    in_d[idx] = 1;
  }

  res.inverse_closed = true;
  for (const GroupElement& e : candidate.elements)
    if (!in_d[G.index_of(G.negate(e))]) res.inverse_closed = false;

  std::vector<std::uint64_t> counts(v, 0);
  for (const GroupElement& a : candidate.elements)
    for (const GroupElement& b : candidate.elements)
      if (a != b) ++counts[G.index_of(G.subtract(a, b))];

  std::optional<std::uint64_t> lambda, mu;
  for (std::uint64_t g = 1; g < v; ++g) {
    auto& slot = in_d[g] ? lambda : mu;
    if (!slot) {
      slot = counts[g];
    } else if (*slot != counts[g]) {
      res.violation = {in_d[g] ? "difference count not constant on D"
                               : "difference count not constant outside D",
                       G.element_at(g), counts[g]};
      return res;
    }
  }

  res.params = make_pds_params(Integer(static_cast<unsigned long>(v)),
                               Integer(static_cast<unsigned long>(candidate.elements.size())),
                               Integer(static_cast<unsigned long>(lambda.value_or(0))),
                               Integer(static_cast<unsigned long>(mu.value_or(0))));
  return res;
}

CosetProfile coset_profile(const PdsCandidate& candidate,
                           const std::vector<GroupElement>& subgroup) {
  const AbelianGroup& G = candidate.group;
  const std::uint64_t v = G.order();
  if (subgroup.empty()) throw NotASubgroup("empty subgroup");

  std::vector<char> in_n(v, 0);
  for (const GroupElement& e : subgroup) in_n[G.index_of(e)] = 1;
  if (!in_n[0]) throw NotASubgroup("identity missing");
  for (const GroupElement& a : subgroup)
    for (const GroupElement& b : subgroup)
      if (!in_n[G.index_of(G.add(a, b))])
        throw NotASubgroup("not closed under the group operation: " + element_string(a) +
                           " + " + element_string(b));

  std::vector<char> in_d(v, 0);
  for (const GroupElement& e : candidate.elements) in_d[G.index_of(e)] = 1;

  CosetProfile profile;
  std::vector<char> visited(v, 0);
  for (std::uint64_t rep = 0; rep < v; ++rep) {
    if (visited[rep]) continue;
    const GroupElement r = G.element_at(rep);
    std::uint64_t hits = 0;
    for (const GroupElement& n : subgroup) {
      const std::uint64_t m = G.index_of(G.add(r, n));
      visited[m] = 1;
      if (in_d[m]) ++hits;
    }
    if (rep == 0)
      profile.k1 = hits;
    else
      profile.counts.push_back(hits);
  }
  return profile;
}

bool involution_free(const PdsCandidate& candidate) {
  for (const GroupElement& e : candidate.elements)
    if (candidate.group.element_order(e) == 2) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Finite fields
// ---------------------------------------------------------------------------

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& modulus, std::uint32_t p) {
  Poly res(a.size() + b.size() == 0 ? 0 : a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      res[i + j] = (res[i + j] + a[i] * b[j]) % p;
  while (res.size() >= modulus.size()) {
    const std::uint32_t c = res.back();
    if (c) {
      const std::size_t off = res.size() - modulus.size();
      for (std::size_t i = 0; i < modulus.size(); ++i)
        res[off + i] = (res[off + i] + p * c - c * modulus[i] % p) % p;
    }
    res.pop_back();
    poly_trim(res);
  }
  return res;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
  }
  return r;
}

// Remainder of a monic `num` divided by `div` (div need not be monic).
bool poly_divides(const Poly& div, Poly num, std::uint32_t p) {
  const std::uint32_t lead_inv = mod_inverse(div.back(), p);
  while (num.size() >= div.size()) {
    const std::uint32_t c = num.back();
    if (c) {
      const std::uint32_t factor = c * lead_inv % p;
      const std::size_t off = num.size() - div.size();
      for (std::size_t i = 0; i < div.size(); ++i)
        num[off + i] = (num[off + i] + p * factor - factor * div[i] % p) % p;
    }
    num.pop_back();
    poly_trim(num);
  }
  return num.empty();
}

bool poly_irreducible(const Poly& monic, std::uint32_t p) {
  const std::size_t deg = monic.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
      Poly div(d + 1, 0);
      std::uint64_t rest = n;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      div[d] = 1;
      if (poly_divides(div, monic, p)) return false;
    }
  }
  return true;
}

Poly decode(std::uint32_t a, std::uint32_t p, std::uint32_t f) {
  Poly out(f, 0);
  for (std::uint32_t i = 0; i < f; ++i) {
    out[i] = a % p;
    a /= p;
  }
  poly_trim(out);
  return out;
}

std::uint32_t encode(const Poly& a, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return v;
}

bool is_small_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::uint32_t FiniteField::add(std::uint32_t a, std::uint32_t b) const {
  Poly pa = decode(a, p, f), pb = decode(b, p, f);
  Poly out(f, 0);
  pa.resize(f, 0);
  pb.resize(f, 0);
  for (std::uint32_t i = 0; i < f; ++i) out[i] = (pa[i] + pb[i]) % p;
  return encode(out, p);
}

std::uint32_t FiniteField::mul(std::uint32_t a, std::uint32_t b) const {
  return encode(poly_mul_mod(decode(a, p, f), decode(b, p, f), modulus, p), p);
}

std::uint32_t FiniteField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

GroupElement FiniteField::to_additive(std::uint32_t a) const {
  GroupElement e(f);
  for (std::uint32_t i = 0; i < f; ++i) {
    e[i] = a % p;
    a /= p;
  }
  return e;
}

FiniteField make_field(std::uint32_t p, std::uint32_t f) {
  if (!is_small_prime(p)) throw std::invalid_argument("make_field: p must be prime");
  if (f < 1) throw std::invalid_argument("make_field: f must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < f; ++i) {
    q *= p;
    if (q > 1u << 20) throw std::invalid_argument("make_field: field too large");
  }

  FiniteField field;
  field.p = p;
  field.f = f;
  field.q = static_cast<std::uint32_t>(q);

  // Ascending integer value enumerates (c_{f-1},...,c_0) in lexicographic
  // order with the high-degree coefficient most significant.
  for (std::uint32_t n = 0; n < field.q; ++n) {
    Poly cand = decode(n, p, f);
    cand.resize(f, 0);
    cand.push_back(1);
    if (poly_irreducible(cand, p)) {
      field.modulus = cand;
      break;
    }
  }
  if (field.modulus.empty()) throw std::logic_error("make_field: no irreducible polynomial");

  const auto order_primes = prime_support(Integer(field.q - 1));
  for (std::uint32_t g = 1; g < field.q; ++g) {
    bool full = true;
    for (const Integer& r : order_primes) {
      const auto exp = (field.q - 1) / r.get_ui();
      if (field.pow(g, exp) == 1) {
        full = false;
        break;
      }
    }
    if (full) {
      field.primitive_element = g;
      break;
    }
  }
  if (field.primitive_element == 0 && field.q > 2)
    throw std::logic_error("make_field: no primitive element");
  return field;
}

CyclotomicClassSet cyclotomic_classes(std::uint32_t p, std::uint32_t f, std::uint32_t ord_e) {
  CyclotomicClassSet set;
  set.field = make_field(p, f);
  if (ord_e == 0 || (set.field.q - 1) % ord_e != 0)
    throw std::invalid_argument("cyclotomic_classes: ord_e must divide p^f - 1");
  set.ord_e = ord_e;
  const std::uint32_t class_size = (set.field.q - 1) / ord_e;
  set.classes.assign(ord_e, {});
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < set.field.q - 1; ++i) {
    set.classes[i % ord_e].push_back(x);
    x = set.field.mul(x, set.field.primitive_element);
  }
  for (auto& cls : set.classes)
    if (cls.size() != class_size) throw std::logic_error("cyclotomic_classes: bad class size");
  return set;
}

PdsCandidate candidate_from_classes(const CyclotomicClassSet& classes,
                                    const std::vector<std::uint32_t>& index_subset) {
  AbelianGroup group;
  group.invariant_factors.assign(classes.field.f, classes.field.p);
  std::vector<GroupElement> elements;
  for (std::uint32_t i : index_subset)
    for (std::uint32_t x : classes.classes.at(i))
      elements.push_back(classes.field.to_additive(x));
  return make_pds_candidate(std::move(group), std::move(elements));
}

std::vector<std::vector<std::uint32_t>> find_cyclotomic_pds(const CyclotomicClassSet& classes,
                                                            const PdsParams& target) {
  const std::uint32_t class_size = (classes.field.q - 1) / classes.ord_e;
  if (target.k <= 0 || target.k % class_size != 0)
    throw std::invalid_argument("find_cyclotomic_pds: k must be a positive multiple of the class size");
  const auto u = mpz_class(target.k / class_size).get_ui();
  std::vector<std::vector<std::uint32_t>> found;
  if (u > classes.ord_e) return found;

  std::vector<std::uint32_t> subset(u);
  for (std::uint32_t i = 0; i < u; ++i) subset[i] = i;
  for (;;) {
    PdsCandidate cand = candidate_from_classes(classes, subset);
    VerifyResult res = verify_pds(cand);
    if (res.ok() && res.params->v == target.v && res.params->k == target.k &&
        res.params->lambda == target.lambda && res.params->mu == target.mu)
      found.push_back(subset);
    // next lexicographic combination
    std::size_t i = u;
    while (i > 0 && subset[i - 1] == classes.ord_e - (u - i) - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < u; ++j) subset[j] = subset[j - 1] + 1;
  }
  return found;
}

// ---------------------------------------------------------------------------
// Line partitions and geometry checks
// ---------------------------------------------------------------------------

namespace {

struct PartitionSearch {
  const std::vector<std::uint64_t>& d_index;     // sorted indices of D
  const std::vector<std::vector<std::size_t>>& adj;  // positions, ascending
  std::size_t block_size;
  std::size_t limit;
  std::vector<std::vector<std::size_t>> current;
  std::vector<std::vector<std::vector<std::size_t>>> results;
  std::vector<char> covered;

  void run() {
    covered.assign(d_index.size(), 0);
    descend();
  }

  void descend() {
    if (results.size() >= limit) return;
    std::size_t pivot = covered.size();
    for (std::size_t i = 0; i < covered.size(); ++i)
      if (!covered[i]) {
        pivot = i;
        break;
      }
    if (pivot == covered.size()) {
      results.push_back(current);
      return;
    }
    std::vector<std::size_t> cands;
    for (std::size_t n : adj[pivot])
      if (!covered[n]) cands.push_back(n);
    if (cands.size() + 1 < block_size) return;
    std::vector<std::size_t> pick;
    choose(pivot, cands, 0, pick);
  }

  void choose(std::size_t pivot, const std::vector<std::size_t>& cands, std::size_t from,
              std::vector<std::size_t>& pick) {
    if (results.size() >= limit) return;
    if (pick.size() == block_size - 1) {
      std::vector<std::size_t> block{pivot};
      block.insert(block.end(), pick.begin(), pick.end());
      covered[pivot] = 1;
      for (std::size_t n : pick) covered[n] = 1;
      current.push_back(block);
      descend();
      current.pop_back();
      covered[pivot] = 0;
      for (std::size_t n : pick) covered[n] = 0;
      return;
    }
    for (std::size_t i = from; i < cands.size(); ++i) {
      const std::size_t c = cands[i];
      bool clique = true;
      for (std::size_t chosen : pick)
        if (!std::binary_search(adj[chosen].begin(), adj[chosen].end(), c)) {
          clique = false;
          break;
        }
      if (!clique) continue;
      pick.push_back(c);
      choose(pivot, cands, i + 1, pick);
      pick.pop_back();
      if (results.size() >= limit) return;
    }
  }
};

}  // namespace

std::vector<std::vector<std::vector<GroupElement>>> partition_into_lines(
    const PdsCandidate& candidate, std::uint32_t line_size, std::size_t limit) {
  if (line_size < 2) throw std::invalid_argument("partition_into_lines: line_size must be >= 2");
  if (limit < 1) throw std::invalid_argument("partition_into_lines: limit must be >= 1");
  const std::size_t block = line_size - 1;
  if (candidate.elements.size() % block != 0)
    throw std::invalid_argument("partition_into_lines: line_size-1 must divide |D|");

  const AbelianGroup& G = candidate.group;
  std::vector<std::uint64_t> d_index;
  d_index.reserve(candidate.elements.size());
  for (const GroupElement& e : candidate.elements) d_index.push_back(G.index_of(e));

  std::vector<char> in_d(G.order(), 0);
  for (std::uint64_t i : d_index) in_d[i] = 1;
  std::vector<std::vector<std::size_t>> adj(d_index.size());
  for (std::size_t i = 0; i < d_index.size(); ++i)
    for (std::size_t j = 0; j < d_index.size(); ++j)
      if (i != j &&
          in_d[G.index_of(G.subtract(candidate.elements[i], candidate.elements[j]))])
        adj[i].push_back(j);

  PartitionSearch search{d_index, adj, block, limit, {}, {}, {}};
  search.run();

  std::vector<std::vector<std::vector<GroupElement>>> out;
  out.reserve(search.results.size());
  for (const auto& partition : search.results) {
    std::vector<std::vector<GroupElement>> blocks;
    for (const auto& positions : partition) {
      std::vector<GroupElement> b;
      for (std::size_t pos : positions) b.push_back(candidate.elements[pos]);
      blocks.push_back(std::move(b));
    }
    out.push_back(std::move(blocks));
  }
  return out;
}

Geometry build_geometry(const PdsCandidate& candidate,
                        const std::vector<std::vector<GroupElement>>& blocks) {
  const AbelianGroup& G = candidate.group;
  std::vector<std::uint64_t> seen;
  for (const auto& b : blocks)
    for (const GroupElement& e : b) seen.push_back(G.index_of(e));
  std::sort(seen.begin(), seen.end());
  std::vector<std::uint64_t> d_index;
  for (const GroupElement& e : candidate.elements) d_index.push_back(G.index_of(e));
  if (seen != d_index)
    throw std::invalid_argument("build_geometry: blocks do not partition D");

  std::set<std::vector<std::uint64_t>> lines;
  const std::uint64_t v = G.order();
  for (std::uint64_t g = 0; g < v; ++g) {
    const GroupElement ge = G.element_at(g);
    for (const auto& b : blocks) {
      std::vector<std::uint64_t> line{g};
      line.reserve(b.size() + 1);
      for (const GroupElement& e : b) line.push_back(G.index_of(G.add(ge, e)));
      std::sort(line.begin(), line.end());
      lines.insert(std::move(line));
    }
  }
  Geometry geo;
  geo.group = G;
  geo.lines.assign(lines.begin(), lines.end());
  return geo;
}

PgCheck check_pg_axioms(const Geometry& geometry) {
  PgCheck check;
  const std::uint64_t v = geometry.group.order();
  if (v > 4096)
    throw std::invalid_argument("check_pg_axioms: group too large for the dense scan");
  if (geometry.lines.empty()) {
    check.violation = "no lines";
    return check;
  }

  const std::size_t line_size = geometry.lines.front().size();
  if (line_size < 2) {
    check.violation = "line with fewer than two points";
    return check;
  }
  for (const auto& line : geometry.lines)
    if (line.size() != line_size) {
      check.violation = "line sizes differ";
      return check;
    }

  std::vector<std::uint64_t> degree(v, 0);
  std::vector<char> collinear(v * v, 0);
  std::set<std::pair<std::uint64_t, std::uint64_t>> joined;
  for (const auto& line : geometry.lines) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      ++degree[line[i]];
      for (std::size_t j = i + 1; j < line.size(); ++j) {
        const auto pr = std::make_pair(line[i], line[j]);
        if (!joined.insert(pr).second) {
          check.violation = "two lines share points " + std::to_string(pr.first) + " and " +
                            std::to_string(pr.second);
          return check;
        }
        collinear[pr.first * v + pr.second] = 1;
        collinear[pr.second * v + pr.first] = 1;
      }
    }
  }

  for (std::uint64_t x = 0; x < v; ++x)
    if (degree[x] != degree[0]) {
      check.violation = "point degrees differ at point " + std::to_string(x);
      return check;
    }

  std::optional<std::uint64_t> alpha;
  for (const auto& line : geometry.lines) {
    std::vector<char> on_line(v, 0);
    for (std::uint64_t pt : line) on_line[pt] = 1;
    for (std::uint64_t x = 0; x < v; ++x) {
      if (on_line[x]) continue;
      std::uint64_t meet = 0;
      for (std::uint64_t y : line) meet += collinear[x * v + y];
      if (!alpha) {
        alpha = meet;
      } else if (*alpha != meet) {
        check.violation = "alpha not constant over anti-flags (point " + std::to_string(x) + ")";
        return check;
      }
    }
  }
  if (!alpha) {
    check.violation = "geometry has no anti-flags";
    return check;
  }

  check.ok = true;
  check.s = line_size - 1;
  check.t = degree[0] - 1;
  check.alpha = *alpha;
  check.proper = check.alpha >= 1 && check.alpha < std::min(check.s, check.t);
  return check;
}

bool check_rigid(const Geometry& geometry) {
  const AbelianGroup& G = geometry.group;
  const std::uint64_t v = G.order();
  for (const auto& line : geometry.lines) {
    for (std::uint64_t g = 1; g < v; ++g) {
      const GroupElement ge = G.element_at(g);
      std::vector<std::uint64_t> shifted;
      shifted.reserve(line.size());
      for (std::uint64_t pt : line) shifted.push_back(G.index_of(G.add(G.element_at(pt), ge)));
      std::sort(shifted.begin(), shifted.end());
      if (shifted == line) return false;
    }
  }
  return true;
}

std::vector<GroupElement> sylow_subgroup(const AbelianGroup& group, std::uint32_t p) {
  if (!is_small_prime(p)) throw std::invalid_argument("sylow_subgroup: p must be prime");
  // Per component Z_m the Sylow p-part is generated by m / p^{v_p(m)}.
  std::vector<std::vector<std::uint32_t>> component(group.invariant_factors.size());
  for (std::size_t i = 0; i < component.size(); ++i) {
    std::uint32_t m = group.invariant_factors[i];
    std::uint32_t ppart = 1;
    while (m % p == 0) {
      m /= p;
      ppart *= p;
    }
    const std::uint32_t step = group.invariant_factors[i] / ppart;
    for (std::uint32_t j = 0; j < ppart; ++j) component[i].push_back(j * step);
  }
  std::vector<GroupElement> out;
  GroupElement cur(component.size(), 0);
  std::vector<std::size_t> pos(component.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < component.size(); ++i) cur[i] = component[i][pos[i]];
    out.push_back(cur);
    std::size_t i = 0;
    while (i < pos.size() && ++pos[i] == component[i].size()) pos[i++] = 0;
    if (i == pos.size()) break;
  }
  std::sort(out.begin(), out.end(), [&](const GroupElement& a, const GroupElement& b) {
    return group.index_of(a) < group.index_of(b);
  });
  return out;
}

std::vector<std::vector<GroupElement>> all_subgroups_elementary(const AbelianGroup& group) {
  if (group.invariant_factors.empty())
    throw std::invalid_argument("all_subgroups_elementary: empty group");
  const std::uint32_t p = group.invariant_factors.front();
  for (std::uint32_t m : group.invariant_factors)
    if (m != p) throw std::invalid_argument("all_subgroups_elementary: not elementary abelian");
  if (!is_small_prime(p) || group.order() > 81)
    throw std::invalid_argument("all_subgroups_elementary: unsupported group");

  const std::size_t n = group.invariant_factors.size();
  std::vector<std::vector<GroupElement>> out;

  // Enumerate reduced-row-echelon bases: pivot columns ascending, pivot
  // entries 1, zeros above/left of pivots, free entries arbitrary.
  std::vector<std::size_t> pivots;
  auto emit_span = [&](const std::vector<GroupElement>& rows) {
    std::vector<GroupElement> span;
    std::vector<std::uint32_t> coeff(rows.size(), 0);
    for (;;) {
      GroupElement e(n, 0);
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c0 = 0; c0 < n; ++c0)
          e[c0] = (e[c0] + coeff[r] * rows[r][c0]) % p;
      span.push_back(e);
      std::size_t i = 0;
      while (i < coeff.size() && ++coeff[i] == p) coeff[i++] = 0;
      if (i == coeff.size()) break;
    }
    std::sort(span.begin(), span.end(), [&](const GroupElement& a, const GroupElement& b) {
      return group.index_of(a) < group.index_of(b);
    });
    span.erase(std::unique(span.begin(), span.end()), span.end());
    out.push_back(std::move(span));
  };

  auto fill_free = [&](auto&& self, std::vector<GroupElement>& rows, std::size_t r,
                       std::size_t c0) -> void {
    // advance to next free cell of row r
    std::size_t row = r, col = c0;
    for (;;) {
      if (row == rows.size()) {
        emit_span(rows);
        return;
      }
      if (col == n) {
        ++row;
        col = 0;
        continue;
      }
      const bool pivot_col =
          std::find(pivots.begin(), pivots.end(), col) != pivots.end();
      if (pivot_col || col < pivots[row]) {
        ++col;
        continue;
      }
      break;
    }
    for (std::uint32_t val = 0; val < p; ++val) {
      rows[row][col] = val;
      self(self, rows, row, col + 1);
    }
    rows[row][col] = 0;
  };

  auto choose_pivots = [&](auto&& self, std::size_t from, std::size_t k) -> void {
    if (pivots.size() == k) {
      std::vector<GroupElement> rows(k, GroupElement(n, 0));
      for (std::size_t r = 0; r < k; ++r) rows[r][pivots[r]] = 1;
      fill_free(fill_free, rows, 0, 0);
      return;
    }
    for (std::size_t c0 = from; c0 < n; ++c0) {
      pivots.push_back(c0);
      self(self, c0 + 1, k);
      pivots.pop_back();
    }
  };

  out.push_back({group.identity()});  // the zero subspace
  for (std::size_t k = 1; k <= n; ++k) choose_pivots(choose_pivots, 0, k);
  return out;
}

// ---------------------------------------------------------------------------
// PDS file format
// ---------------------------------------------------------------------------

namespace {

std::vector<std::uint32_t> parse_csv_u32(const std::string& line, const char* what) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    unsigned long val = 0;
    try {
      val = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      throw std::runtime_error(std::string("malformed ") + what + ": '" + tok + "'");
    }
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size())
      throw std::runtime_error(std::string("malformed ") + what + ": '" + tok + "'");
    out.push_back(static_cast<std::uint32_t>(val));
  }
  if (out.empty()) throw std::runtime_error(std::string("empty ") + what);
  return out;
}

std::string strip(const std::string& raw) {
  std::string s = raw.substr(0, raw.find('#'));
  const auto from = s.find_first_not_of(" \t\r\n");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r\n");
  return s.substr(from, to - from + 1);
}

}  // namespace

PdsCandidate read_pds_file(std::istream& in) {
  AbelianGroup group;
  std::vector<GroupElement> elements;
  bool have_group = false;
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string line = strip(raw);
    if (line.empty()) continue;
    if (!have_group) {
      group.invariant_factors = parse_csv_u32(line, "invariant factors");
      for (std::uint32_t m : group.invariant_factors)
        if (m < 2) throw std::runtime_error("invariant factors must be >= 2");
      have_group = true;
    } else {
      elements.push_back(parse_csv_u32(line, "element"));
    }
  }
  if (!have_group) throw std::runtime_error("missing invariant-factor line");
  try {
    return make_pds_candidate(std::move(group), std::move(elements));
  } catch (const std::invalid_argument& err) {
    throw std::runtime_error(err.what());
  }
}

void write_pds_file(std::ostream& out, const PdsCandidate& candidate) {
  for (std::size_t i = 0; i < candidate.group.invariant_factors.size(); ++i) {
    if (i) out << ',';
    out << candidate.group.invariant_factors[i];
  }
  out << '\n';
  for (const GroupElement& e : candidate.elements) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out << ',';
      out << e[i];
    }
    out << '\n';
  }
}

}  // namespace rigidpg
