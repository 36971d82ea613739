#include "doctest.h"

#include "eva/pricing.hpp"
#include "fixtures.hpp"

using namespace eva;

TEST_CASE("reservation price is the cheapest fitting type's cost") {
  auto catalog = fixtures::example_catalog();
  auto tasks = fixtures::example_tasks();
  CHECK(reservation_price(tasks[0], catalog) == doctest::Approx(12.0));
  CHECK(reservation_price(tasks[1], catalog) == doctest::Approx(3.0));
  CHECK(reservation_price(tasks[2], catalog) == doctest::Approx(0.8));
  CHECK(reservation_price(tasks[3], catalog) == doctest::Approx(0.4));
}

TEST_CASE("reservation price throws for infeasible tasks") {
  auto catalog = fixtures::example_catalog();
  Task huge{"t", "j", "w", {16, 256, 4096.0}};
  CHECK_THROWS_AS(reservation_price(huge, catalog), InfeasibleTaskError);
}

TEST_CASE("rp_sum adds per-task reservation prices") {
  auto catalog = fixtures::example_catalog();
  auto tasks = fixtures::example_tasks();
  PricingContext ctx = make_pricing_context(tasks, catalog);
  // {tau1, tau2, tau4} = 12 + 3 + 0.4.
  std::vector<PricedTask> set;
  for (const char* id : {"tau1", "tau2", "tau4"}) {
    set.push_back(PricedTask{tasks[id[3] - '1'], ctx.rp_of(id)});
  }
  CHECK(rp_sum(set) == doctest::Approx(15.4));
  // {tau2, tau4} = 3.4.
  std::vector<PricedTask> small{set[1], set[2]};
  CHECK(rp_sum(small) == doctest::Approx(3.4));
}

TEST_CASE("tnrp_single scales RP by throughput") {
  PricedTask t12{{"a", "a", "w", {}}, 12.0};
  PricedTask t3{{"b", "b", "w", {}}, 3.0};
  CHECK(tnrp_single(t12, 0.8) == doctest::Approx(9.6));
  CHECK(tnrp_single(t3, 0.9) == doctest::Approx(2.7));
  CHECK_THROWS_AS(tnrp_single(t12, 0.0), EvaError);
  CHECK_THROWS_AS(tnrp_single(t12, 1.5), EvaError);
}

TEST_CASE("tnrp_multitask charges the whole job for one task's slowdown") {
  // Job of two tasks with RPs {12, 3}; the RP-12 task at tput 0.8:
  // 12 - 0.2 * (12 + 3) = 9.0.
  PricedTask a{{"a", "j", "w", {}}, 12.0};
  PricedTask b{{"b", "j", "w", {}}, 3.0};
  std::vector<PricedTask> job{a, b};
  CHECK(tnrp_multitask(a, job, 0.8) == doctest::Approx(9.0));
  // Single-task job collapses to tnrp_single.
  std::vector<PricedTask> solo{a};
  CHECK(tnrp_multitask(a, solo, 0.8) == doctest::Approx(tnrp_single(a, 0.8)));
  // May go negative; never clamped.
  PricedTask cheap{{"c", "j2", "w", {}}, 1.0};
  std::vector<PricedTask> job2{cheap, a};
  CHECK(tnrp_multitask(cheap, job2, 0.5) == doctest::Approx(1.0 - 0.5 * 13.0));
}

TEST_CASE("tnrp_set reproduces the worked efficiency inequalities") {
  auto catalog = fixtures::example_catalog();
  auto tasks = fixtures::example_tasks();
  PricingContext ctx = make_pricing_context(tasks, catalog);
  auto priced = [&](std::size_t i) {
    return PricedTask{tasks[i], ctx.rp_of(tasks[i].id)};
  };
  const InstanceType& it1 = catalog[0];
  const InstanceType& it3 = catalog[2];

  // {tau1@0.8, tau2@0.9} -> 12.3 (> it1's 12, efficient).
  std::unordered_map<std::string, double> tput{{"tau1", 0.8}, {"tau2", 0.9}};
  std::vector<PricedTask> pair12{priced(0), priced(1)};
  CHECK(tnrp_set(pair12, tput, ctx) == doctest::Approx(12.3));
  CHECK(is_cost_efficient(pair12, it1, tput, ctx));

  // {tau1@0.7, tau2@0.8} -> 10.8 (< 12, inefficient).
  std::unordered_map<std::string, double> worse{{"tau1", 0.7}, {"tau2", 0.8}};
  CHECK(tnrp_set(pair12, worse, ctx) == doctest::Approx(10.8));
  CHECK_FALSE(is_cost_efficient(pair12, it1, worse, ctx));

  // Equality is accepted: {tau3@1.0} on it3.
  std::unordered_map<std::string, double> one{{"tau3", 1.0}};
  std::vector<PricedTask> solo3{priced(2)};
  CHECK(tnrp_set(solo3, one, ctx) == doctest::Approx(0.8));
  CHECK(is_cost_efficient(solo3, it3, one, ctx));

  // {tau2@1.0, tau4@1.0} on it1: 3.4 < 12.
  std::unordered_map<std::string, double> ones{{"tau2", 1.0}, {"tau4", 1.0}};
  std::vector<PricedTask> pair24{priced(1), priced(3)};
  CHECK_FALSE(is_cost_efficient(pair24, it1, ones, ctx));
}

TEST_CASE("tnrp_set with all throughputs 1.0 equals rp_sum") {
  auto catalog = fixtures::example_catalog();
  auto tasks = fixtures::example_tasks();
  PricingContext ctx = make_pricing_context(tasks, catalog);
  std::unordered_map<std::string, double> ones;
  std::vector<PricedTask> priced;
  for (const Task& t : tasks) {
    ones[t.id] = 1.0;
    priced.push_back(PricedTask{t, ctx.rp_of(t.id)});
  }
  CHECK(tnrp_set(priced, ones, ctx) == doctest::Approx(rp_sum(priced)));
}
