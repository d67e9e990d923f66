#include "rigidpg/sieve.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rigidpg {
namespace {

// Prime p when n = p^m, nothing otherwise.
std::optional<Integer> prime_power_base(const FactoredInteger& f) {
  if (f.factors.size() == 1) return f.factors.front().first;
  return std::nullopt;
}

std::string k1_set_string(const std::vector<Integer>& k1s) {
  std::ostringstream os;
  if (k1s.size() == 1) {
    os << "k1=" << k1s.front();
    return os.str();
  }
  os << "k1 in {";
  for (std::size_t i = 0; i < k1s.size(); ++i) {
    if (i) os << ',';
    os << k1s[i];
  }
  os << '}';
  return os.str();
}

}  // namespace

std::vector<SubgroupChoice> admissible_subgroup_orders(const FactoredInteger& v_factored) {
  const auto& fs = v_factored.factors;
  if (fs.size() > 20)
    throw std::invalid_argument("admissible_subgroup_orders: too many prime divisors");
  std::vector<SubgroupChoice> out;
  const std::size_t n = fs.size();
  for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << n); ++mask) {
    SubgroupChoice ch;
    ch.order = 1;
    bool complement_odd = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t(1) << i)) {
        ch.order *= pow_ui(fs[i].first, fs[i].second);
        ch.order_factored.factors.push_back(fs[i]);
      } else if (fs[i].first == 2) {
        complement_odd = false;
      }
    }
    if (!complement_odd) continue;
    ch.order_factored.value = ch.order;
    ch.quotient_order = v_factored.value / ch.order;
    out.push_back(std::move(ch));
  }
  std::sort(out.begin(), out.end(),
            [](const SubgroupChoice& a, const SubgroupChoice& b) { return a.order < b.order; });
  return out;
}

SubPdsReduction reduce_sub_pds(const PdsParams& pds, const SubgroupChoice& subgroup) {
  if (!pds.delta) throw std::invalid_argument("reduce_sub_pds: Delta is not a perfect square");
  SubPdsReduction red;
  red.subgroup = subgroup;
  const Integer& N = subgroup.order;
  mpz_gcd(red.pi.get_mpz_t(), N.get_mpz_t(), pds.delta->get_mpz_t());
  red.theta = floor_div(pds.beta + red.pi, 2 * red.pi);
  red.beta1 = pds.beta - 2 * red.theta * red.pi;
  red.Delta1 = red.pi * red.pi;
  red.discriminant =
      (N + red.beta1) * (N + red.beta1) - (red.Delta1 - red.beta1 * red.beta1) * (N - 1);
  if (red.discriminant >= 0) {
    auto rt = integer_sqrt(red.discriminant);
    if (rt.exact) {
      const Integer plus = N + red.beta1 + rt.root;
      const Integer minus = N + red.beta1 - rt.root;
      for (const Integer& num : {plus, minus}) {
        if (num < 0 || num % 2 != 0) continue;
        Integer k1 = num / 2;
        if (k1 > N - 1) continue;
        if (!red.k1_candidates.empty() && red.k1_candidates.back() == k1) continue;
        red.k1_candidates.push_back(std::move(k1));
      }
    }
  }
  return red;
}

T1Status check_t1(const SubPdsReduction& reduction) {
  if (reduction.discriminant < 0) return T1Status::DeadNegative;
  if (!is_perfect_square(reduction.discriminant)) return T1Status::DeadNonsquare;
  return T1Status::Inconclusive;
}

BranchVerdict check_t2(const SubPdsReduction& reduction, const PdsParams& pds,
                       const Integer& k1) {
  BranchVerdict verdict;
  verdict.k1 = k1;
  if (auto p = prime_power_base(reduction.subgroup.order_factored)) {
    if (*p > 2 && k1 % (*p - 1) != 0) {
      verdict.status = BranchStatus::DeadT2Subgroup;
      verdict.divisibility_witness = {*p, k1};
      return verdict;
    }
  }
  const FactoredInteger qf = factorize(reduction.subgroup.quotient_order);
  if (auto p = prime_power_base(qf)) {
    if (*p > 2 && (pds.k - k1) % (*p - 1) != 0) {
      verdict.status = BranchStatus::DeadT2Quotient;
      verdict.divisibility_witness = {*p, pds.k - k1};
      return verdict;
    }
  }
  verdict.status = BranchStatus::Alive;
  return verdict;
}

T3Result check_t3(const PdsParams& pds, const SubgroupChoice& subgroup, const Integer& k1) {
  if (k1 > pds.k || k1 > subgroup.order - 1)
    throw std::invalid_argument("check_t3: k1 out of range");
  const Integer cosets = pds.v / subgroup.order - 1;
  const Integer s1 = pds.k - k1;
  const Integer s2 =
      k1 * pds.lambda + (subgroup.order - 1 - k1) * pds.mu - k1 * (k1 - 1) + s1;
  Integer var = cosets * s2 - s1 * s1;
  const bool dead = var < 0;
  return {std::move(var), dead};
}

std::string subgroup_label(const SubgroupChoice& subgroup) {
  if (subgroup.order_factored.factors.size() == 1) {
    std::ostringstream os;
    os << "Sylow-" << subgroup.order_factored.factors.front().first;
    return os.str();
  }
  return "N=" + subgroup.order_factored.to_string();
}

CaseReport sieve_case(const CandidateRow& row) {
  CaseReport report;
  report.row = row;
  for (const SubgroupChoice& choice : admissible_subgroup_orders(row.v_factored)) {
    SubgroupReport sub;
    sub.reduction = reduce_sub_pds(row.pds, choice);
    sub.t1_status = check_t1(sub.reduction);
    if (sub.t1_status != T1Status::Inconclusive) {
      sub.killed = true;
    } else if (sub.reduction.k1_candidates.empty()) {
      sub.no_admissible_root = true;
      sub.killed = true;
    } else {
      bool all_dead = true;
      for (const Integer& k1 : sub.reduction.k1_candidates) {
        BranchVerdict bv = check_t2(sub.reduction, row.pds, k1);
        if (k1 <= row.pds.k && k1 <= choice.order - 1) {
          T3Result t3 = check_t3(row.pds, choice, k1);
          bv.var_value = t3.var_value;
          if (bv.status == BranchStatus::Alive && t3.dead) bv.status = BranchStatus::DeadT3;
        }
        all_dead = all_dead && bv.status != BranchStatus::Alive;
        sub.branches.push_back(std::move(bv));
      }
      sub.killed = all_dead;
    }
    report.per_subgroup.push_back(std::move(sub));
  }

  // T.1 witness: prefer a negative discriminant, then the smallest order.
  for (std::size_t i = 0; i < report.per_subgroup.size(); ++i) {
    const auto& sub = report.per_subgroup[i];
    if (sub.t1_status == T1Status::Inconclusive) continue;
    if (!report.t1_witness) {
      report.t1_witness = i;
    } else {
      const auto& best = report.per_subgroup[*report.t1_witness];
      if (best.t1_status != T1Status::DeadNegative && sub.t1_status == T1Status::DeadNegative)
        report.t1_witness = i;
    }
  }

  if (report.t1_witness) {
    report.verdict = CaseVerdict::ExcludedT1;
    report.killer = report.t1_witness;
  } else {
    for (std::size_t i = 0; i < report.per_subgroup.size() && !report.killer; ++i)
      if (report.per_subgroup[i].killed) report.killer = i;
    if (report.killer) {
      const auto& sub = report.per_subgroup[*report.killer];
      if (sub.no_admissible_root) {
        // No k1 exists at all; same flavor of kill as T.1.
        report.verdict = CaseVerdict::ExcludedT1;
      } else {
        bool any_t2s = false, any_t2q = false, any_t3 = false;
        for (const auto& bv : sub.branches) {
          any_t2s |= bv.status == BranchStatus::DeadT2Subgroup;
          any_t2q |= bv.status == BranchStatus::DeadT2Quotient;
          any_t3 |= bv.status == BranchStatus::DeadT3;
        }
        if (any_t3 && !any_t2s && !any_t2q)
          report.verdict = CaseVerdict::ExcludedT3;
        else if (any_t2s != any_t2q && !any_t3)
          report.verdict = CaseVerdict::ExcludedT2;
        else
          report.verdict = CaseVerdict::ExcludedMixed;
      }
    } else {
      report.verdict = CaseVerdict::Open;
    }
  }

  for (std::size_t i = 0; i < report.per_subgroup.size(); ++i) {
    const auto& sub = report.per_subgroup[i];
    const std::string label = subgroup_label(sub.reduction.subgroup);
    if (sub.no_admissible_root)
      report.structural_facts.push_back(label + ": no admissible k1 root");
    if (report.verdict != CaseVerdict::Open) continue;
    std::vector<Integer> alive;
    for (const auto& bv : sub.branches)
      if (bv.status == BranchStatus::Alive) alive.push_back(bv.k1);
    std::sort(alive.begin(), alive.end());
    report.structural_facts.push_back(label + ": " + k1_set_string(alive));
  }
  return report;
}

const char* to_string(T1Status s) {
  switch (s) {
    case T1Status::DeadNegative: return "negative";
    case T1Status::DeadNonsquare: return "nonsquare";
    case T1Status::Inconclusive: return "square";
  }
  return "?";
}

const char* to_string(BranchStatus s) {
  switch (s) {
    case BranchStatus::DeadT2Subgroup: return "DeadT2Subgroup";
    case BranchStatus::DeadT2Quotient: return "DeadT2Quotient";
    case BranchStatus::DeadT3: return "DeadT3";
    case BranchStatus::Alive: return "Alive";
  }
  return "?";
}

const char* to_string(CaseVerdict v) {
  switch (v) {
    case CaseVerdict::ExcludedT1: return "ExcludedT1";
    case CaseVerdict::ExcludedT2: return "ExcludedT2";
    case CaseVerdict::ExcludedT3: return "ExcludedT3";
    case CaseVerdict::ExcludedMixed: return "ExcludedMixed";
    case CaseVerdict::Open: return "Open";
  }
  return "?";
}

FamilyInstance family_instance(unsigned n) {
  if (n < 2) throw std::invalid_argument("family_instance: need n >= 2");
  FamilyInstance inst;
  inst.n = n;
  inst.alpha = pow_ui(2, n) + 1;
  inst.m = (inst.alpha + 1) * (inst.alpha + 1) * (inst.alpha - 1);
  inst.r = inst.alpha * inst.alpha - 1;
  inst.pds = make_pds_params(inst.m * inst.m, inst.r * (inst.m + 1),
                             -inst.m + inst.r * inst.r + 3 * inst.r,
                             inst.r * inst.r + inst.r);
  // Same parameters as the geometry triple (a^2+a-1, a^3-a-1, a).
  GeometryParams g{inst.alpha * inst.alpha + inst.alpha - 1,
                   inst.alpha * inst.alpha * inst.alpha - inst.alpha - 1, inst.alpha};
  PdsParams direct = derive_pds_params(g);
  if (direct.v != inst.pds.v || direct.k != inst.pds.k || direct.lambda != inst.pds.lambda ||
      direct.mu != inst.pds.mu)
    throw std::logic_error("family_instance: closed form disagrees with derive_pds_params");
  return inst;
}

Integer family_var_plus_closed_form(unsigned n) {
  const Integer p2n = pow_ui(2, n);
  return -pow_ui(2, 4 * n - 4) * (p2n + 2) * (7 * p2n - 2) *
         (pow_ui(2, 3 * n) + 15 * pow_ui(2, 2 * n) + 9 * pow_ui(2, n + 2) + 28);
}

Integer family_var_minus_closed_form(unsigned n) {
  const Integer p2n = pow_ui(2, n);
  return -pow_ui(2, 2 * n - 4) * (p2n + 2) *
         (7 * pow_ui(2, 2 * n) - 3 * pow_ui(2, n + 1) - 8) *
         (pow_ui(2, 4 * n) + 15 * pow_ui(2, 3 * n) + pow_ui(2, 2 * n + 5) +
          3 * pow_ui(2, n + 2) - 16);
}

FamilyExclusion family_exclude(unsigned n) {
  FamilyExclusion ex;
  ex.instance = family_instance(n);

  SubgroupChoice sylow2;
  sylow2.order = pow_ui(2, 2 * n + 4);
  sylow2.order_factored.value = sylow2.order;
  sylow2.order_factored.factors.emplace_back(Integer(2), 2 * n + 4);
  sylow2.quotient_order = ex.instance.pds.v / sylow2.order;

  ex.reduction = reduce_sub_pds(ex.instance.pds, sylow2);
  if (ex.reduction.k1_candidates.size() != 2)
    throw std::logic_error("family_exclude: expected exactly two k1 roots");
  ex.k1_plus = ex.reduction.k1_candidates[0];
  ex.k1_minus = ex.reduction.k1_candidates[1];
  ex.var_plus = check_t3(ex.instance.pds, sylow2, ex.k1_plus).var_value;
  ex.var_minus = check_t3(ex.instance.pds, sylow2, ex.k1_minus).var_value;
  ex.closed_form_match = ex.var_plus == family_var_plus_closed_form(n) &&
                         ex.var_minus == family_var_minus_closed_form(n);
  return ex;
}

}  // namespace rigidpg
