#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracac/cosine_family.hpp"
#include "fracac/descent.hpp"
#include "oracles.hpp"

using namespace fracac;

namespace {

CosinePoly pure_mode(int k, int m) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(k + 1);
  v[m] = 1.0;
  return CosinePoly(std::move(v));
}

}  // namespace

TEST_CASE("descend from the exact minimizer stops immediately") {
  Grid1D g(0.0, 1.0, 64);
  const auto params = RegimeParams::make(0.75, 0.1);
  const auto km = build_kernel(g, params);
  const DoubleWell well = DoubleWell::extended();

  const auto rec = descend(Field::constant(g, 1.0), km, params, well, {});
  CHECK(rec.converged);
  CHECK(rec.iterations == 0);
  CHECK(rec.energy_value == 0.0);
  CHECK(rec.grad_norm == 0.0);
  CHECK(rec.is_constant);
}

TEST_CASE("the zero field is a stationary point of the free descent") {
  Grid1D g(0.0, 1.0, 64);
  const auto params = RegimeParams::make(0.75, 0.1);
  const auto km = build_kernel(g, params);
  const auto rec = descend(Field::constant(g, 0.0), km, params, DoubleWell::extended(), {});
  CHECK(rec.converged);
  CHECK(rec.iterations == 0);
  CHECK(rec.is_constant);
  CHECK(rec.mean_value == 0.0);
}

TEST_CASE("descend validates its inputs") {
  Grid1D g(0.0, 1.0, 64);
  const auto params = RegimeParams::make(0.75, 0.1);
  const auto km = build_kernel(g, params);
  const Field u = Field::constant(g, 0.5);
  CHECK_THROWS_AS(descend(u, km, params, DoubleWell::quartic(), {}), std::invalid_argument);

  const DoubleWell well = DoubleWell::extended();
  DescentOptions bad;
  bad.grad_tol = 0.0;
  CHECK_THROWS_AS(descend(u, km, params, well, bad), std::invalid_argument);
  bad = {};
  bad.shrink = 1.0;
  CHECK_THROWS_AS(descend(u, km, params, well, bad), std::invalid_argument);
  bad = {};
  bad.initial_step = -1.0;
  CHECK_THROWS_AS(descend(u, km, params, well, bad), std::invalid_argument);
}

TEST_CASE("descent from the single-interface member finds a nonconstant critical point") {
  Grid1D g(0.0, M_PI, 256);
  const auto params = RegimeParams::make(0.75, 0.05);
  const auto km = build_kernel(g, params);
  const DoubleWell well = DoubleWell::extended();

  const Field seed = build_member(pure_mode(1, 1), 0.05, g);
  DescentOptions opts;
  opts.max_iters = 20000;
  opts.grad_tol = 1e-4;
  const auto rec = descend(seed, km, params, well, opts);

  REQUIRE(rec.converged);
  CHECK(rec.grad_norm <= opts.grad_tol);
  CHECK_FALSE(rec.is_constant);
  CHECK(rec.energy_value > 0.0);
  CHECK(rec.energy_value <
        empirical_bound(1, 0.05, g, params, DoubleWell::quartic(), 16, 1, &km));
  CHECK(truncation_check(rec, well));

  // Regression value for this seeded configuration.
  CHECK(rec.energy_value == doctest::Approx(4.237993795634).epsilon(1e-6));

  // Monotone energy trace under backtracking.
  for (std::size_t i = 1; i < rec.energy_trace.size(); ++i)
    CHECK(rec.energy_trace[i] <= rec.energy_trace[i - 1]);

  // The relaxed profile keeps the antisymmetry of the seed.
  CHECK(std::abs(rec.mean_value) <= 1e-6);
}

TEST_CASE("descend(-u0) is the exact negation of descend(u0)") {
  Grid1D g(0.0, M_PI, 128);
  const auto params = RegimeParams::make(0.6, 0.1);
  const auto km = build_kernel(g, params);
  const DoubleWell well = DoubleWell::extended();

  const Field seed = build_member(pure_mode(2, 2), 0.1, g);
  DescentOptions opts;
  opts.max_iters = 500;  // stop early; negation symmetry holds at every iterate
  const auto plus = descend(seed, km, params, well, opts);
  const auto minus = descend(Field(g, -seed.values), km, params, well, opts);
  CHECK(plus.iterations == minus.iterations);
  CHECK((minus.field.values == -plus.field.values).all());
  CHECK(minus.energy_value == plus.energy_value);
}

TEST_CASE("fixed step rule and mean-zero projection") {
  Grid1D g(0.0, M_PI, 128);
  const auto params = RegimeParams::make(0.75, 0.1);
  const auto km = build_kernel(g, params);
  const DoubleWell well = DoubleWell::extended();

  // Small fixed steps from a near-well state converge without line search.
  DescentOptions fixed;
  fixed.step_rule = StepRule::fixed;
  fixed.initial_step = 5e-3;
  fixed.max_iters = 50000;
  fixed.grad_tol = 1e-6;
  const auto rec = descend(Field::constant(g, 0.8), km, params, well, fixed);
  CHECK(rec.converged);
  CHECK(rec.field.values.abs().maxCoeff() <= 1.0 + 1e-9);

  // Mean-zero descent keeps every iterate on the constraint plane.
  DescentOptions proj;
  proj.mean_zero = true;
  proj.max_iters = 20000;
  const Field seed = build_member(pure_mode(1, 1), 0.1, g);
  const auto zrec = descend(seed, km, params, well, proj);
  CHECK(zrec.converged);
  CHECK(std::abs(zrec.mean_value) <= 1e-12);
}

TEST_CASE("truncation_check") {
  Grid1D g(0.0, 1.0, 64);
  const auto params = RegimeParams::make(0.25, 0.2);
  const auto km = build_kernel(g, params);
  const DoubleWell well = DoubleWell::extended();

  auto rec = descend(Field::constant(g, 1.0), km, params, well, {});
  CHECK(truncation_check(rec, well));

  // A non-critical overshoot fails the bound.
  rec.field.values[3] = 1.5;
  CHECK_FALSE(truncation_check(rec, well));

  rec.converged = false;
  CHECK_THROWS_AS(truncation_check(rec, well), std::invalid_argument);
}

TEST_CASE("converged descents from family seeds satisfy the truncation bound") {
  const DoubleWell well = DoubleWell::extended();
  DescentOptions opts;
  opts.max_iters = 20000;
  opts.grad_tol = 1e-4;
  Grid1D g(0.0, M_PI, 128);
  int converged = 0;
  for (double s : {0.25, 0.5, 0.75}) {
    const auto params = RegimeParams::make(s, 0.1);
    const auto km = build_kernel(g, params);
    for (int m = 0; m <= 2; ++m) {
      const Field seed = build_member(pure_mode(2, m), 0.1, g);
      const auto rec = descend(seed, km, params, well, opts);
      if (!rec.converged) continue;
      ++converged;
      CHECK(truncation_check(rec, well));
    }
  }
  CHECK(converged >= 6);
}

TEST_CASE("constrained_min: large-eps minimizer is feasible with positive energy") {
  Grid1D g(0.0, 1.0, 128);
  const auto params = RegimeParams::make(0.75, 10.0);
  const auto km = build_kernel(g, params);
  const DoubleWell well = DoubleWell::extended();
  DescentOptions opts;
  opts.max_iters = 20000;
  opts.grad_tol = 1e-6;

  const Field step = field_from_fn(g, [](double x) { return x < 0.5 ? -1.0 : 1.0; });
  CHECK(mean(step) == 0.0);
  std::vector<Field> seeds{step, Field(g, oracles::random_values(g.num_cells, 4))};

  const auto rec = constrained_min(km, params, well, opts, seeds);
  CHECK(rec.converged);
  CHECK(rec.energy_value > 0.0);
  CHECK(std::abs(rec.mean_value) <= 1e-12);
  CHECK(rec.field.values.abs().maxCoeff() <= 1.0 + 1e-9);

  // At this eps the potential weight is tiny and the minimizer collapses to
  // the zero field, so m_eps approaches the zero-field energy from above.
  const double zero_energy = energy(Field::constant(g, 0.0), km, params, well);
  CHECK(rec.energy_value >= zero_energy - 1e-12);
  CHECK(rec.energy_value == doctest::Approx(zero_energy).epsilon(1e-6));
  CHECK(rec.field.values.abs().maxCoeff() <= 0.01);

  // Deterministic to the last bit across reruns.
  const auto again = constrained_min(km, params, well, opts, seeds);
  CHECK(again.energy_value == rec.energy_value);
  CHECK((again.field.values == rec.field.values).all());
}

TEST_CASE("constrained_min aggregates failures when nothing converges") {
  Grid1D g(0.0, M_PI, 64);
  const auto params = RegimeParams::make(0.75, 0.1);
  const auto km = build_kernel(g, params);
  DescentOptions opts;
  opts.max_iters = 50;
  opts.grad_tol = 1e-18;  // unreachable: stagnation or iteration cap on every start

  const Field step = field_from_fn(g, [](double x) { return x < M_PI / 2.0 ? -1.0 : 1.0; });
  try {
    constrained_min(km, params, DoubleWell::extended(), opts, {step});
    FAIL("expected aggregated failure");
  } catch (const numerical_error& err) {
    CHECK(std::string(err.what()).find("all 1 starts failed") != std::string::npos);
  }
}

TEST_CASE("descent reports stagnation and non-finite gradients as numerical errors") {
  Grid1D g(0.0, M_PI, 64);
  const auto params = RegimeParams::make(0.75, 0.05);
  const auto km = build_kernel(g, params);
  const DoubleWell well = DoubleWell::extended();

  DescentOptions strangled;
  strangled.max_iters = 100000;
  strangled.grad_tol = 1e-18;
  const Field seed = build_member(pure_mode(1, 1), 0.05, g);
  CHECK_THROWS_AS(descend(seed, km, params, well, strangled), numerical_error);

  Field poisoned = Field::constant(g, 0.5);
  poisoned.values[10] = std::numeric_limits<double>::quiet_NaN();
  try {
    descend(poisoned, km, params, well, {});
    FAIL("expected numerical error");
  } catch (const numerical_error& err) {
    CHECK(std::string(err.what()).find("non-finite gradient") != std::string::npos);
  }
}

TEST_CASE("dedup_pairs folds negations, drops constants, sorts by energy") {
  Grid1D g(0.0, M_PI, 128);
  const auto params = RegimeParams::make(0.75, 0.05);
  const auto km = build_kernel(g, params);
  const DoubleWell well = DoubleWell::extended();
  DescentOptions opts;
  opts.max_iters = 20000;

  const Field seed = build_member(pure_mode(1, 1), 0.05, g);
  auto a = descend(seed, km, params, well, opts);
  auto b = descend(Field(g, -seed.values), km, params, well, opts);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  a.source_index = 0;
  b.source_index = 1;

  // {u, -u} collapse to one pair.
  auto pairs = dedup_pairs({a, b}, km);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].multiplicity == 2);

  // Constants contribute nothing.
  auto c1 = descend(Field::constant(g, 1.0), km, params, well, opts);
  auto cm = descend(Field::constant(g, -1.0), km, params, well, opts);
  auto c0 = descend(Field::constant(g, 0.0), km, params, well, opts);
  c1.source_index = 0;
  cm.source_index = 1;
  c0.source_index = 2;
  CHECK(dedup_pairs({c1, cm, c0}, km).empty());

  // Two descents from perturbed copies of one seed merge into one pair.
  Field wiggled(g, seed.values);
  for (Eigen::Index i = 0; i < g.num_cells; ++i)
    wiggled.values[i] = std::clamp(wiggled.values[i] + 1e-4 * std::sin(7.0 * double(i)), -1.0, 1.0);
  auto d = descend(wiggled, km, params, well, opts);
  REQUIRE(d.converged);
  d.source_index = 2;
  pairs = dedup_pairs({a, d}, km);
  CHECK(pairs.size() == 1);
  CHECK(pairs[0].multiplicity == 2);

  // Orientation: representative mean is nonnegative, or the first
  // significant sample is positive for zero-mean profiles.
  REQUIRE(!pairs.empty());
  if (std::abs(pairs[0].rep.mean_value) > 1e-12) {
    CHECK(pairs[0].rep.mean_value >= 0.0);
  } else {
    for (Eigen::Index i = 0; i < g.num_cells; ++i) {
      if (std::abs(pairs[0].rep.field.values[i]) > 1e-12) {
        CHECK(pairs[0].rep.field.values[i] > 0.0);
        break;
      }
    }
  }

  // Non-converged records are rejected.
  auto bad = a;
  bad.converged = false;
  CHECK_THROWS_AS(dedup_pairs({bad}, km), std::invalid_argument);
}
