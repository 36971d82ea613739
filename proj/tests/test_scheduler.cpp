#include "doctest.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "eva/delays.hpp"
#include "eva/scheduler.hpp"
#include "fixtures.hpp"

using namespace eva;

namespace {

CoLocationTable ones() { return CoLocationTable(1.0); }

std::vector<std::string> task_ids(const AssignedInstance& inst) {
  std::vector<std::string> ids;
  for (const Task& t : inst.tasks) ids.push_back(t.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

TEST_CASE("golden: full reconfiguration of the worked four-task example") {
  auto catalog = fixtures::example_catalog();
  auto tasks = fixtures::example_tasks();
  PricingContext ctx = make_pricing_context(tasks, catalog);
  CoLocationTable table = ones();

  auto start = std::chrono::steady_clock::now();
  ClusterConfiguration config =
      full_reconfiguration(tasks, catalog, table, ctx);
  auto elapsed = std::chrono::steady_clock::now() - start;

  REQUIRE(config.instances.size() == 2);
  CHECK(config.instances[0].type.id == "it1");
  CHECK(task_ids(config.instances[0]) ==
        std::vector<std::string>{"tau1", "tau2", "tau4"});
  CHECK(config.instances[1].type.id == "it3");
  CHECK(task_ids(config.instances[1]) == std::vector<std::string>{"tau3"});
  CHECK(configuration_hourly_cost(config) == doctest::Approx(12.8));
  CHECK(std::chrono::duration<double, std::milli>(elapsed).count() < 1.0);
}

TEST_CASE("full reconfiguration of a single task uses its RP type") {
  auto catalog = fixtures::example_catalog();
  auto tasks = fixtures::example_tasks();
  PricingContext ctx = make_pricing_context({tasks[2]}, catalog);
  ClusterConfiguration config =
      full_reconfiguration({tasks[2]}, catalog, ones(), ctx);
  REQUIRE(config.instances.size() == 1);
  CHECK(config.instances[0].type.id == "it3");
}

TEST_CASE("full reconfiguration of the empty set is empty") {
  auto catalog = fixtures::example_catalog();
  PricingContext ctx;
  CHECK(full_reconfiguration({}, catalog, ones(), ctx).instances.empty());
}

TEST_CASE("algorithm postcondition: every kept instance is cost-efficient") {
  auto catalog = fixtures::example_catalog();
  auto tasks = fixtures::example_tasks();
  PricingContext ctx = make_pricing_context(tasks, catalog);
  CoLocationTable table(0.95);
  ClusterConfiguration config =
      full_reconfiguration(tasks, catalog, table, ctx);
  for (const AssignedInstance& inst : config.instances) {
    CHECK(assignment_tnrp(inst.tasks, table, ctx) >=
          inst.type.hourly_cost - 1e-9);
  }
}

TEST_CASE("partial reconfiguration: empty subset is the identity") {
  auto catalog = fixtures::example_catalog();
  auto tasks = fixtures::example_tasks();
  PricingContext ctx = make_pricing_context(tasks, catalog);
  ClusterConfiguration current;
  current.instances.push_back(
      {"a", catalog[0], {tasks[0], tasks[1], tasks[3]}});
  current.instances.push_back({"b", catalog[2], {tasks[2]}});
  ClusterConfiguration out =
      partial_reconfiguration(current, {}, catalog, ones(), ctx);
  REQUIRE(out.instances.size() == 2);
  CHECK(out.instances[0].id == "a");
  CHECK(out.instances[1].id == "b");
  CHECK(task_ids(out.instances[0]) == task_ids(current.instances[0]));
}

TEST_CASE("partial reconfiguration places one new task around the rest") {
  auto catalog = fixtures::example_catalog();
  auto tasks = fixtures::example_tasks();
  PricingContext ctx = make_pricing_context(tasks, catalog);
  ClusterConfiguration current;
  current.instances.push_back({"a", catalog[0], {tasks[0], tasks[1]}});
  ClusterConfiguration out = partial_reconfiguration(
      current, {tasks[2]}, catalog, ones(), ctx);
  // The efficient instance "a" is untouched; tau3 lands on a fresh it3.
  bool kept = false, placed = false;
  for (const AssignedInstance& inst : out.instances) {
    if (inst.id == "a") kept = task_ids(inst) ==
                               std::vector<std::string>{"tau1", "tau2"};
    for (const Task& t : inst.tasks) {
      if (t.id == "tau3") {
        placed = true;
        CHECK(inst.type.id == "it3");
      }
    }
  }
  CHECK(kept);
  CHECK(placed);
}

TEST_CASE("partial reconfiguration extracts inefficient instances") {
  auto catalog = fixtures::example_catalog();
  auto tasks = fixtures::example_tasks();
  PricingContext ctx = make_pricing_context(tasks, catalog);
  // tau4 alone on an it1 instance: TNRP 0.4 < 12, so it is extracted,
  // re-placed on it4, and the it1 instance disappears.
  ClusterConfiguration current;
  current.instances.push_back({"a", catalog[0], {tasks[3]}});
  ClusterConfiguration out =
      partial_reconfiguration(current, {}, catalog, ones(), ctx);
  REQUIRE(out.instances.size() == 1);
  CHECK(out.instances[0].type.id == "it4");
  CHECK(task_ids(out.instances[0]) == std::vector<std::string>{"tau4"});
  CHECK(out.instances[0].id.empty());  // a fresh planned instance
}

TEST_CASE("plan_from_config: identical configuration has zero cost") {
  auto catalog = fixtures::example_catalog();
  auto tasks = fixtures::example_tasks();
  PricingContext ctx = make_pricing_context(tasks, catalog);
  ClusterConfiguration current;
  current.instances.push_back({"a", catalog[0], {tasks[0], tasks[1]}});
  DelayModel delays = default_delay_model();
  ReconfigurationPlan plan =
      plan_from_config(current, current, delays, ones(), ctx);
  CHECK(plan.migrations.empty());
  CHECK(plan.launches.empty());
  CHECK(plan.terminations.empty());
  CHECK(plan.migration_cost_dollars == doctest::Approx(0.0));
}

TEST_CASE("plan_from_config prices moves and launches from delays") {
  auto catalog = fixtures::example_catalog();
  auto tasks = fixtures::example_tasks();
  PricingContext ctx = make_pricing_context(tasks, catalog);
  DelayModel delays;  // defaults: checkpoint 8 s, launch 47 s, boot 19+190 s

  // Move tau2 from its own it2 onto the existing it1.
  ClusterConfiguration current;
  current.instances.push_back({"a", catalog[0], {tasks[0]}});
  current.instances.push_back({"b", catalog[1], {tasks[1]}});
  ClusterConfiguration target;
  target.instances.push_back({"", catalog[0], {tasks[0], tasks[1]}});
  ReconfigurationPlan plan =
      plan_from_config(target, current, delays, ones(), ctx);
  REQUIRE(plan.migrations.size() == 1);
  CHECK(plan.migrations[0].task_id == "tau2");
  CHECK(plan.terminations == std::vector<std::string>{"b"});
  // M = (checkpoint + launch)/3600 * destination cost.
  CHECK(plan.migration_cost_dollars ==
        doctest::Approx((8.0 + 47.0) / 3600.0 * 12.0));

  // Launching a new instance costs (acquisition + setup)/3600 * its cost.
  ClusterConfiguration empty_current;
  ClusterConfiguration launch_target;
  launch_target.instances.push_back({"", catalog[2], {tasks[2]}});
  PricingContext ctx3 = make_pricing_context({tasks[2]}, catalog);
  ReconfigurationPlan launch_plan =
      plan_from_config(launch_target, empty_current, delays, ones(), ctx3);
  REQUIRE(launch_plan.launches.size() == 1);
  CHECK(launch_plan.migration_cost_dollars ==
        doctest::Approx((19.0 + 190.0) / 3600.0 * 0.8));
}

TEST_CASE("plan saving sums TNRP minus cost per instance") {
  auto catalog = fixtures::example_catalog();
  auto tasks = fixtures::example_tasks();
  PricingContext ctx = make_pricing_context(tasks, catalog);
  ClusterConfiguration target;
  target.instances.push_back({"", catalog[0], {tasks[0], tasks[1], tasks[3]}});
  target.instances.push_back({"", catalog[2], {tasks[2]}});
  ReconfigurationPlan plan = plan_from_config(
      target, ClusterConfiguration{}, default_delay_model(), ones(), ctx);
  // (15.4 - 12) + (0.8 - 0.8) = 3.4.
  CHECK(plan.saving_per_hour == doctest::Approx(3.4));
}

TEST_CASE("mean time to full reconfiguration: closed form") {
  CHECK(mean_time_to_full_reconfiguration(2.0, 0.5) ==
        doctest::Approx(-1.0 / (2.0 * std::log(0.5))).epsilon(1e-12));
  CHECK(mean_time_to_full_reconfiguration(2.0, 0.5) ==
        doctest::Approx(0.7213).epsilon(1e-4));
  CHECK(mean_time_to_full_reconfiguration(1.0, 1.0 - std::exp(-1.0)) ==
        doctest::Approx(1.0));
  // p -> 1 limit is 0.
  CHECK(mean_time_to_full_reconfiguration(1.0, 1.0 - 1e-12) < 0.04);
  CHECK(mean_time_to_full_reconfiguration(1.0, 1.0 - 1e-12) > 0.0);
}

TEST_CASE("mean duration is strictly decreasing in lambda and p") {
  for (double lam : {0.5, 1.0, 2.0, 4.0}) {
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      double base = mean_time_to_full_reconfiguration(lam, p);
      CHECK(mean_time_to_full_reconfiguration(lam * 1.5, p) < base);
      CHECK(mean_time_to_full_reconfiguration(lam, p + 0.05) < base);
    }
  }
}

TEST_CASE("decision model estimation and smoothing") {
  ReconfigurationDecisionModel model;
  // 10 events over 2 hours -> lambda_hat 5/hr.
  std::vector<double> events;
  for (int i = 0; i < 10; ++i) events.push_back(i * 720.0);
  update_decision_model(model, events, 2.0 * 3600.0);
  CHECK(model.lambda_hat() == doctest::Approx(5.0));
  // 0 full adoptions over 8 events -> p_hat = 1/10.
  ReconfigurationDecisionModel m2;
  std::vector<double> eight;
  for (int i = 0; i < 8; ++i) eight.push_back(i * 100.0);
  update_decision_model(m2, eight, 3600.0 * 2);
  CHECK(m2.p_hat() == doctest::Approx(0.1));
  // Cold start: no events.
  ReconfigurationDecisionModel cold;
  CHECK(cold.cold());
  CHECK_THROWS_AS(estimate_mean_duration(cold), EvaError);
}

TEST_CASE("ensemble criterion follows the strict inequality") {
  // Warm model with known lambda/p.
  ReconfigurationDecisionModel model;
  std::vector<double> events;
  for (int i = 0; i < 8; ++i) events.push_back(i * 900.0);
  update_decision_model(model, events, 4.0 * 3600.0);  // lambda = 2/hr
  for (int i = 0; i < 4; ++i) record_adoption(model, true);
  for (int i = 0; i < 4; ++i) record_adoption(model, false);
  // p_hat = (4+1)/(8+2) = 0.5; D = 0.7213 h.
  double d = estimate_mean_duration(model);
  CHECK(d == doctest::Approx(0.7213).epsilon(1e-3));

  ReconfigurationPlan full, partial;
  // S_F = S_P, M_F > M_P -> Partial.
  full.saving_per_hour = partial.saving_per_hour = 2.0;
  full.migration_cost_dollars = 1.0;
  partial.migration_cost_dollars = 0.5;
  CHECK_FALSE(choose_full_configuration(full, partial, model));
  // M_F = M_P, S_F > S_P -> Full.
  full.saving_per_hour = 3.0;
  partial.saving_per_hour = 2.0;
  full.migration_cost_dollars = partial.migration_cost_dollars = 1.0;
  CHECK(choose_full_configuration(full, partial, model));
  // S_F - S_P = 1 $/hr, M_F - M_P = 1 $ -> Partial since D = 0.7213 < 1.
  full.saving_per_hour = 3.0;
  partial.saving_per_hour = 2.0;
  full.migration_cost_dollars = 1.5;
  partial.migration_cost_dollars = 0.5;
  CHECK_FALSE(choose_full_configuration(full, partial, model));
  // Exact equality -> Partial.
  full.migration_cost_dollars = partial.migration_cost_dollars +
                                estimate_mean_duration(model) * 1.0;
  CHECK_FALSE(choose_full_configuration(full, partial, model));
  // Cold model -> Partial regardless.
  ReconfigurationDecisionModel cold;
  full.saving_per_hour = 100.0;
  full.migration_cost_dollars = 0.0;
  CHECK_FALSE(choose_full_configuration(full, partial, cold));
}

TEST_CASE("lambda window slides") {
  ReconfigurationDecisionModel model;
  model.window_hours = 1.0;
  update_decision_model(model, {0.0, 600.0, 1200.0}, 1800.0);
  double early = model.lambda_hat();
  CHECK(early > 0.0);
  // Two hours later all events fell out of the 1 h window.
  update_decision_model(model, {}, 3600.0 * 2.5);
  CHECK(model.window_event_times_s.empty());
}
