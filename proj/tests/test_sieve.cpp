#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "golden.hpp"
#include "rigidpg/sieve.hpp"

using namespace rigidpg;

namespace {

SubgroupChoice subgroup_of_order(const CandidateRow& row, const Integer& order) {
  for (auto& ch : admissible_subgroup_orders(row.v_factored))
    if (ch.order == order) return ch;
  throw std::out_of_range("no admissible subgroup of that order");
}

const SubgroupReport& subgroup_report(const CaseReport& rep, const Integer& order) {
  for (const auto& sub : rep.per_subgroup)
    if (sub.reduction.subgroup.order == order) return sub;
  throw std::out_of_range("no subgroup report of that order");
}

}  // namespace

TEST_CASE("admissible subgroup orders") {
  CHECK(admissible_subgroup_orders(factorize(1024)).empty());
  CHECK(admissible_subgroup_orders(factorize(4096)).empty());

  auto one = admissible_subgroup_orders(factorize(Integer("2985984")));  // 2^12*3^6
  REQUIRE(one.size() == 1);
  CHECK(one[0].order == 4096);
  CHECK(one[0].quotient_order == 729);
  CHECK(one[0].order_factored.to_string() == "2^12");

  auto three = admissible_subgroup_orders(factorize(Integer("17150000")));  // 2^4*5^5*7^3
  REQUIRE(three.size() == 3);
  CHECK(three[0].order == 16);
  CHECK(three[1].order == 5488);
  CHECK(three[2].order == 50000);

  auto odd = admissible_subgroup_orders(factorize(194481));  // 3^4*7^4
  REQUIRE(odd.size() == 2);
  CHECK(odd[0].order == 81);
  CHECK(odd[1].order == 2401);

  // even quotients are inadmissible: only the full Sylow-2 survives
  auto c19 = admissible_subgroup_orders(factorize(Integer("39337984")));  // 2^14*7^4
  REQUIRE(c19.size() == 1);
  CHECK(c19[0].order == 16384);
}

TEST_CASE("reduce_sub_pds on the published reductions") {
  // case 20, |N| = 11^4
  auto row20 = golden::make_case(20);
  auto red = reduce_sub_pds(row20.pds, subgroup_of_order(row20, 14641));
  CHECK(red.pi == 121);
  CHECK(red.theta == -3);
  CHECK(red.beta1 == 11);
  CHECK(red.Delta1 == 14641);
  CHECK(red.discriminant == 2108304);  // 1452^2
  REQUIRE(red.k1_candidates.size() == 2);
  CHECK(red.k1_candidates[0] == 8052);
  CHECK(red.k1_candidates[1] == 6600);

  // case 11, |N| = 7^4
  auto row11 = golden::make_case(11);
  auto red11 = reduce_sub_pds(row11.pds, subgroup_of_order(row11, 2401));
  CHECK(red11.pi == 49);
  CHECK(red11.theta == -1);
  CHECK(red11.beta1 == -7);
  CHECK(red11.discriminant == 86436);  // 294^2
  REQUIRE(red11.k1_candidates.size() == 2);
  CHECK(red11.k1_candidates[0] == 1344);
  CHECK(red11.k1_candidates[1] == 1050);

  // case 10, |N| = 2^12
  auto row10 = golden::make_case(10);
  auto red10 = reduce_sub_pds(row10.pds, subgroup_of_order(row10, 4096));
  CHECK(red10.pi == 64);
  CHECK(red10.theta == -8);
  CHECK(red10.beta1 == 16);
  REQUIRE(red10.k1_candidates.size() == 2);
  CHECK(red10.k1_candidates[0] == 2600);
  CHECK(red10.k1_candidates[1] == 1512);
}

TEST_CASE("check_t1 statuses") {
  auto row12 = golden::make_case(12);
  auto red = reduce_sub_pds(row12.pds, subgroup_of_order(row12, 125));
  CHECK(red.discriminant == -57500);
  CHECK(check_t1(red) == T1Status::DeadNegative);
  CHECK(red.k1_candidates.empty());

  auto row14 = golden::make_case(14);
  auto red14 = reduce_sub_pds(row14.pds, subgroup_of_order(row14, 512));
  CHECK(red14.pi == 8);
  CHECK(red14.theta == -33);
  CHECK(red14.beta1 == 0);
  CHECK(red14.discriminant == 229440);
  CHECK(check_t1(red14) == T1Status::DeadNonsquare);

  auto row20 = golden::make_case(20);
  CHECK(check_t1(reduce_sub_pds(row20.pds, subgroup_of_order(row20, 14641))) ==
        T1Status::Inconclusive);
}

TEST_CASE("check_t2 on the case 20 branches") {
  auto row = golden::make_case(20);
  auto sub = subgroup_of_order(row, 14641);
  auto red = reduce_sub_pds(row.pds, sub);

  auto plus = check_t2(red, row.pds, 8052);
  CHECK(plus.status == BranchStatus::DeadT2Subgroup);
  REQUIRE(plus.divisibility_witness.has_value());
  CHECK(plus.divisibility_witness->first == 11);
  CHECK(plus.divisibility_witness->second == 8052);

  auto minus = check_t2(red, row.pds, 6600);
  CHECK(minus.status == BranchStatus::DeadT2Quotient);
  REQUIRE(minus.divisibility_witness.has_value());
  CHECK(minus.divisibility_witness->first == 5);
  CHECK(minus.divisibility_witness->second == 3488430);

  // case 11, |N| = 7^4, k1 = 1050 survives both sides of T.2
  auto row11 = golden::make_case(11);
  auto red11 = reduce_sub_pds(row11.pds, subgroup_of_order(row11, 2401));
  CHECK(check_t2(red11, row11.pds, 1050).status == BranchStatus::Alive);
}

TEST_CASE("check_t3 exact variances") {
  auto row11 = golden::make_case(11);
  auto sylow7 = subgroup_of_order(row11, 2401);
  auto dead = check_t3(row11.pds, sylow7, 1344);
  CHECK(dead.var_value == -14751744);
  CHECK(dead.dead);
  auto alive = check_t3(row11.pds, sylow7, 1050);
  CHECK(alive.var_value == 1066044);
  CHECK_FALSE(alive.dead);

  auto row10 = golden::make_case(10);
  auto sylow2 = subgroup_of_order(row10, 4096);
  auto a = check_t3(row10.pds, sylow2, 2600);
  auto b = check_t3(row10.pds, sylow2, 1512);
  CHECK(a.var_value == Integer("-3146158080"));
  CHECK(b.var_value == Integer("-440745984"));
  CHECK(a.dead);
  CHECK(b.dead);
}

TEST_CASE("reduction invariants over every admissible subgroup of every case") {
  for (const auto& g : golden::rows()) {
    auto row = golden::make_row(g);
    for (const auto& choice : admissible_subgroup_orders(row.v_factored)) {
      Integer gcd_check;
      mpz_gcd(gcd_check.get_mpz_t(), choice.order.get_mpz_t(),
              choice.quotient_order.get_mpz_t());
      CHECK(gcd_check == 1);
      CHECK(choice.quotient_order % 2 == 1);
      CHECK(choice.order > 1);
      CHECK(choice.order < row.pds.v);

      auto red = reduce_sub_pds(row.pds, choice);
      // beta1 = beta - 2*theta*pi stays within [-pi, pi]
      CHECK(red.beta1 <= red.pi);
      CHECK(red.beta1 >= -red.pi);
      CHECK(red.Delta1 == red.pi * red.pi);

      // each root satisfies the sub-PDS counting identity
      for (const Integer& k1 : red.k1_candidates) {
        CHECK(k1 >= 0);
        CHECK(k1 <= choice.order - 1);
        const Integer mu1 = k1 - (red.Delta1 - red.beta1 * red.beta1) / 4;
        const Integer lambda1 = red.beta1 + mu1;
        CHECK(k1 * (k1 - lambda1 - 1) == (choice.order - k1 - 1) * mu1);
      }
    }
  }
}

TEST_CASE("sieve_case verdicts across the full golden table") {
  const std::set<int> t1_cases{9, 12, 14, 16, 17, 21};
  const std::set<int> t3_cases{3, 4, 6, 7, 8, 10, 13, 15, 18};
  const std::set<int> open_cases{1, 2, 5, 11, 19};

  // published T.1 table: case -> (|N|, pi, theta, beta1, negative?)
  struct T1Golden {
    const char* order;
    long pi, theta, beta1;
    T1Status status;
  };
  const std::map<int, T1Golden> t1_golden{
      {9, {"50000", 50, -9, -10, T1Status::DeadNonsquare}},
      {12, {"125", 25, -40, 5, T1Status::DeadNegative}},
      {14, {"512", 8, -33, 0, T1Status::DeadNonsquare}},
      {16, {"2048", 128, -8, -32, T1Status::DeadNegative}},
      {17, {"85184", 484, -25, 44, T1Status::DeadNegative}},
      {21, {"953312", 1922, -12, -682, T1Status::DeadNegative}},
  };

  for (const auto& g : golden::rows()) {
    auto report = sieve_case(golden::make_row(g));
    CAPTURE(g.case_no);
    if (t1_cases.count(g.case_no)) {
      CHECK(report.verdict == CaseVerdict::ExcludedT1);
      REQUIRE(report.t1_witness.has_value());
      const auto& wit = report.per_subgroup[*report.t1_witness];
      const auto& exp = t1_golden.at(g.case_no);
      CHECK(wit.reduction.subgroup.order == Integer(exp.order));
      CHECK(wit.reduction.pi == exp.pi);
      CHECK(wit.reduction.theta == exp.theta);
      CHECK(wit.reduction.beta1 == exp.beta1);
      CHECK(wit.t1_status == exp.status);
    } else if (t3_cases.count(g.case_no)) {
      CHECK(report.verdict == CaseVerdict::ExcludedT3);
      REQUIRE(report.killer.has_value());
      const auto& killer = report.per_subgroup[*report.killer];
      for (const auto& bv : killer.branches) {
        CHECK(bv.status == BranchStatus::DeadT3);
        REQUIRE(bv.var_value.has_value());
        CHECK(*bv.var_value < 0);
      }
    } else if (g.case_no == 20) {
      CHECK(report.verdict == CaseVerdict::ExcludedMixed);
      REQUIRE(report.killer.has_value());
      const auto& killer = report.per_subgroup[*report.killer];
      CHECK(killer.reduction.subgroup.order == 14641);
      for (const auto& bv : killer.branches)
        CHECK((bv.status == BranchStatus::DeadT2Subgroup ||
               bv.status == BranchStatus::DeadT2Quotient));
    } else {
      CHECK(open_cases.count(g.case_no));
      CHECK(report.verdict == CaseVerdict::Open);
    }
    // no reduction with a square discriminant ever lost both roots
    for (const auto& sub : report.per_subgroup) CHECK_FALSE(sub.no_admissible_root);
  }
}

TEST_CASE("open-case structural facts") {
  auto rep2 = sieve_case(golden::make_case(2));
  CHECK(rep2.verdict == CaseVerdict::Open);
  CHECK(rep2.per_subgroup.empty());
  CHECK(rep2.structural_facts.empty());

  auto rep11 = sieve_case(golden::make_case(11));
  REQUIRE(rep11.structural_facts.size() == 2);
  CHECK(rep11.structural_facts[0] == "Sylow-3: k1 in {24,60}");
  CHECK(rep11.structural_facts[1] == "Sylow-7: k1=1050");
  const auto& sylow7 = subgroup_report(rep11, 2401);
  REQUIRE(sylow7.branches.size() == 2);
  CHECK(sylow7.branches[0].k1 == 1344);
  CHECK(sylow7.branches[0].status == BranchStatus::DeadT3);
  CHECK(*sylow7.branches[0].var_value == -14751744);
  CHECK(sylow7.branches[1].k1 == 1050);
  CHECK(sylow7.branches[1].status == BranchStatus::Alive);
  CHECK(*sylow7.branches[1].var_value == 1066044);
  const auto& sylow3 = subgroup_report(rep11, 81);
  CHECK(sylow3.reduction.discriminant == 1296);
  REQUIRE(sylow3.branches.size() == 2);
  CHECK(sylow3.branches[0].k1 == 60);
  CHECK(sylow3.branches[1].k1 == 24);
  CHECK(sylow3.branches[0].status == BranchStatus::Alive);
  CHECK(sylow3.branches[1].status == BranchStatus::Alive);

  auto rep19 = sieve_case(golden::make_case(19));
  CHECK(rep19.verdict == CaseVerdict::Open);
  REQUIRE(rep19.structural_facts.size() == 1);
  CHECK(rep19.structural_facts[0] == "Sylow-2: k1=2064");
  const auto& sylow2 = subgroup_report(rep19, 16384);
  REQUIRE(sylow2.branches.size() == 2);
  CHECK(sylow2.branches[0].k1 == 14224);
  CHECK(sylow2.branches[0].status == BranchStatus::DeadT2Quotient);
  REQUIRE(sylow2.branches[0].var_value.has_value());
  CHECK(*sylow2.branches[0].var_value == Integer("-282454982656"));
  CHECK(sylow2.branches[1].k1 == 2064);
  CHECK(sylow2.branches[1].status == BranchStatus::Alive);
  CHECK(*sylow2.branches[1].var_value == Integer("21776154624"));
}

TEST_CASE("case 9 is killed by T.1 even though a mixed branch kill exists") {
  auto rep = sieve_case(golden::make_case(9));
  CHECK(rep.verdict == CaseVerdict::ExcludedT1);
  // |N| = 2^4*7^3 = 5488 kills both branches by T.2 / T.3, but the verdict
  // and witness still come from the discriminant test at |N| = 50000.
  const auto& mixed = subgroup_report(rep, 5488);
  CHECK(mixed.killed);
  REQUIRE(mixed.branches.size() == 2);
  CHECK(mixed.branches[0].k1 == 3906);
  CHECK(mixed.branches[0].status == BranchStatus::DeadT2Quotient);
  CHECK(mixed.branches[1].k1 == 1652);
  CHECK(mixed.branches[1].status == BranchStatus::DeadT3);
  const auto& sixteen = subgroup_report(rep, 16);
  CHECK_FALSE(sixteen.killed);  // k1 = 14 and k1 = 0 both stay alive
}

TEST_CASE("family instances") {
  auto f2 = family_instance(2);
  CHECK(f2.alpha == 5);
  CHECK(f2.m == 144);
  CHECK(f2.r == 24);
  CHECK(f2.pds.v == 20736);
  CHECK(f2.pds.k == 3480);
  CHECK(f2.pds.lambda == 504);
  CHECK(f2.pds.mu == 600);

  auto f3 = family_instance(3);
  CHECK(f3.alpha == 9);
  CHECK(f3.pds.v == 640000);
  CHECK(f3.pds.k == 64080);
  CHECK(f3.pds.lambda == 5840);
  CHECK(f3.pds.mu == 6480);

  CHECK_THROWS_AS(family_instance(1), std::invalid_argument);
  CHECK_THROWS_AS(family_instance(0), std::invalid_argument);
}

TEST_CASE("family_exclude n=2 exact values") {
  auto ex = family_exclude(2);
  CHECK(ex.reduction.pi == 16);
  CHECK(ex.reduction.theta == -3);
  CHECK(ex.reduction.beta1 == 0);
  CHECK(ex.k1_plus == 136);
  CHECK(ex.k1_minus == 120);
  CHECK(ex.var_plus == -1188096);
  CHECK(ex.var_minus == -844800);
  CHECK(ex.closed_form_match);
  // the displayed products, evaluated digit for digit
  CHECK(family_var_plus_closed_form(2) == Integer(-16) * 6 * 26 * 476);
  CHECK(family_var_minus_closed_form(2) == Integer(-1) * 6 * 80 * 1760);
}

TEST_CASE("family closed forms hold exactly for n in [2, 32]") {
  for (unsigned n = 2; n <= 32; ++n) {
    auto ex = family_exclude(n);
    CAPTURE(n);
    CHECK(ex.closed_form_match);
    CHECK(ex.var_plus < 0);
    CHECK(ex.var_minus < 0);
    CHECK(ex.reduction.pi == pow_ui(2, n + 2));
    CHECK(ex.reduction.beta1 == 0);
    CHECK(ex.reduction.theta == -pow_ui(2, n - 2) - pow_ui(2, 2 * n - 3));
    CHECK(ex.k1_plus == pow_ui(2, 2 * n + 3) + pow_ui(2, n + 1));
    CHECK(ex.k1_minus == pow_ui(2, 2 * n + 3) - pow_ui(2, n + 1));
  }
}

TEST_CASE("family members coincide with the golden cases 3,4,6,7,8,13,15,18") {
  const std::map<unsigned, int> n_to_case{{2, 3}, {3, 4},  {4, 6},  {5, 7},
                                          {6, 8}, {7, 13}, {8, 15}, {9, 18}};
  for (const auto& [n, case_no] : n_to_case) {
    auto inst = family_instance(n);
    auto row = golden::make_case(case_no);
    CHECK(inst.pds.v == row.pds.v);
    CHECK(inst.pds.k == row.pds.k);
    CHECK(inst.pds.lambda == row.pds.lambda);
    CHECK(inst.pds.mu == row.pds.mu);
    CHECK(inst.m == row.geometry.s + row.geometry.t - row.geometry.alpha + 1);
  }
}

TEST_CASE("subgroup labels") {
  auto row = golden::make_case(9);
  auto subs = admissible_subgroup_orders(row.v_factored);
  CHECK(subgroup_label(subs[0]) == "Sylow-2");
  CHECK(subgroup_label(subs[1]) == "N=2^4*7^3");
  CHECK(subgroup_label(subs[2]) == "N=2^4*5^5");
}
