#include <doctest.h>

#include "oracles.hpp"
#include "qprep/measurement.hpp"

using namespace qprep;

TEST_CASE("operator construction rejects invalid parameters") {
    CHECK_THROWS(MeasurementOperator::make(OpKind::F1, 0.0, 0.5)); // ab = 0
    CHECK_THROWS(MeasurementOperator::make(OpKind::J1, 0.0, 0.0)); // zero operator
    CHECK_THROWS(MeasurementOperator::make(OpKind::F1, 1.2, 0.5)); // entry > 1
    CHECK_THROWS(MeasurementOperator::make(OpKind::J2, -0.1, 0.5));
    CHECK_NOTHROW(MeasurementOperator::make(OpKind::J1, 0.0, 0.3));
}

TEST_CASE("apply: table rows") {
    const StateParam s(0.5);
    auto id = apply(MeasurementOperator::make(OpKind::F1, 1.0, 1.0), s);
    CHECK(id.prob == doctest::Approx(1.0));
    CHECK(id.post->value() == doctest::Approx(0.5));

    auto f1 = apply(MeasurementOperator::make(OpKind::F1, 0.8, 1.0), s);
    CHECK(f1.prob == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(f1.post->value() == doctest::Approx(0.5 / 0.9).epsilon(1e-12));

    auto j2 = apply(MeasurementOperator::make(OpKind::J2, 0.0, 0.2), StateParam(0.3));
    CHECK(j2.prob == doctest::Approx(0.2 * 0.7).epsilon(1e-12));
    CHECK(j2.post->value() == doctest::Approx(1.0));

    auto j1 = apply(MeasurementOperator::make(OpKind::J1, 0.36, 0.0), StateParam(0.4));
    CHECK(j1.prob == doctest::Approx(0.36 * 0.4).epsilon(1e-12));
    CHECK(j1.post->value() == doctest::Approx(0.0));
}

TEST_CASE("apply: zero-probability outcomes carry no post state") {
    auto r = apply(MeasurementOperator::make(OpKind::J1, 0.36, 0.0), StateParam(0.0));
    CHECK(r.prob == 0.0);
    CHECK(!r.post.has_value());
}

TEST_CASE("apply agrees with the matrix oracle") {
    auto g = test::rng(31);
    for (int i = 0; i < 1000; ++i) {
        const MeasurementOperator op = test::random_operator(g);
        const StateParam s(test::uniform(g));
        const auto table = apply(op, s);
        const auto oracle = test::matrix_apply(op, s);
        CHECK(table.prob == doctest::Approx(oracle.prob).epsilon(1e-12));
        if (table.prob > 0.0)
            CHECK(table.post->value() == doctest::Approx(oracle.post).epsilon(1e-12));
    }
}

TEST_CASE("mobius coefficients") {
    const auto f1 = mobius_coeffs(MeasurementOperator::make(OpKind::F1, 0.8, 1.0));
    CHECK(f1.a == doctest::Approx(1.0));
    CHECK(f1.b == doctest::Approx(0.0));
    CHECK(f1.c == doctest::Approx(0.2));
    CHECK(f1.d == doctest::Approx(0.8));

    const auto id = mobius_coeffs(MeasurementOperator::make(OpKind::F1, 1.0, 1.0));
    CHECK(id.a == 1.0);
    CHECK(id.b == 0.0);
    CHECK(id.c == 0.0);
    CHECK(id.d == 1.0);

    const auto f2 = mobius_coeffs(MeasurementOperator::make(OpKind::F2, 1.0, 1.0));
    CHECK(f2.a == -1.0);
    CHECK(f2.b == 1.0);
    CHECK(f2.c == 0.0);
    CHECK(f2.d == 1.0);
}

TEST_CASE("mobius round-trip reproduces apply for filtering operators") {
    auto g = test::rng(41);
    for (int i = 0; i < 100; ++i) {
        const MeasurementOperator op = test::random_filtering(g);
        const MobiusCoeffs m = mobius_coeffs(op);
        const double u = test::uniform(g);
        const auto r = apply(op, StateParam(u));
        const double p = m.p_slope * u + m.p_icept;
        CHECK(p == doctest::Approx(r.prob).epsilon(1e-12));
        CHECK((m.a * u + m.b) / (m.c * u + m.d) ==
              doctest::Approx(r.post->value()).epsilon(1e-12));
    }
}

TEST_CASE("mobius probability line holds for jumps too") {
    auto g = test::rng(43);
    for (int i = 0; i < 100; ++i) {
        const MeasurementOperator op = MeasurementOperator::make(
            i % 2 ? OpKind::J1 : OpKind::J2, test::uniform(g, 0.0, 0.5),
            test::uniform(g, 0.05, 0.5));
        const MobiusCoeffs m = mobius_coeffs(op);
        const double u = test::uniform(g, 0.1, 0.9);
        const auto r = apply(op, StateParam(u));
        CHECK(m.p_slope * u + m.p_icept == doctest::Approx(r.prob).epsilon(1e-12));
        CHECK(m.b / m.d == doctest::Approx(r.post->value()).epsilon(1e-12));
    }
}

TEST_CASE("check_completeness") {
    using Op = MeasurementOperator;
    CHECK(check_completeness({Op::make(OpKind::F1, 1.0, 1.0)}) == doctest::Approx(0.0));
    CHECK(check_completeness({Op::make(OpKind::F1, 1.0, 0.64),
                              Op::make(OpKind::J1, 0.36, 0.0)}) == doctest::Approx(0.0));
    CHECK(check_completeness({Op::make(OpKind::F1, 0.8, 1.0),
                              Op::make(OpKind::J2, 0.0, 0.2)}) == doctest::Approx(0.0));
    CHECK(check_completeness({Op::make(OpKind::F1, 0.5, 0.5)}) == doctest::Approx(0.5));
}

TEST_CASE("set construction enforces completeness and a filtering member") {
    using Op = MeasurementOperator;
    CHECK_THROWS(MeasurementSet::create({Op::make(OpKind::F1, 0.5, 0.5)}));
    CHECK_THROWS(MeasurementSet::create(
        {Op::make(OpKind::J1, 1.0, 0.0), Op::make(OpKind::J1, 0.0, 1.0)}));
    CHECK_NOTHROW(MeasurementSet::create(
        {Op::make(OpKind::F1, 0.8, 1.0), Op::make(OpKind::J2, 0.0, 0.2)}));
}

TEST_CASE("named channels") {
    const auto ad = amplitude_damping(0.36);
    REQUIRE(ad.ops().size() == 2);
    CHECK(ad.ops()[0].kind == OpKind::F1);
    CHECK(ad.ops()[0].b == doctest::Approx(0.64));
    CHECK(ad.ops()[1].kind == OpKind::J1);
    CHECK(ad.completeness_defect() < 1e-12);

    const auto bf = bit_flip(0.5);
    REQUIRE(bf.ops().size() == 2);
    CHECK(bf.ops()[0].kind == OpKind::F1);
    CHECK(bf.ops()[1].kind == OpKind::F2);
    CHECK(bf.completeness_defect() < 1e-12);

    // Noiseless limit drops the vanished jump.
    const auto noiseless = amplitude_damping(0.0);
    REQUIRE(noiseless.ops().size() == 1);
    CHECK(noiseless.ops()[0].kind == OpKind::F1);
    CHECK(noiseless.ops()[0].a == 1.0);
    CHECK(noiseless.ops()[0].b == 1.0);

    for (double v : {0.1, 0.36, 0.5, 0.9}) {
        CHECK(amplitude_damping(v).completeness_defect() < 1e-12);
        CHECK(phase_damping(v).completeness_defect() < 1e-12);
        CHECK(bit_flip(v).completeness_defect() < 1e-12);
        for (double p : {0.1, 0.36, 0.5, 0.9})
            CHECK(generalized_amplitude_damping(p, v).completeness_defect() < 1e-12);
    }
}

TEST_CASE("outcome distributions sum to one and drop null outcomes") {
    using Op = MeasurementOperator;
    const auto mset = MeasurementSet::create(
        {Op::make(OpKind::F1, 0.8, 1.0), Op::make(OpKind::J2, 0.0, 0.2)});

    auto dist = outcome_distribution(mset, StateParam(0.5));
    REQUIRE(dist.size() == 2);
    CHECK(dist[0].index == 0);
    CHECK(dist[0].post.value() == doctest::Approx(0.5 / 0.9));
    CHECK(dist[0].prob == doctest::Approx(0.9));
    CHECK(dist[1].post.value() == doctest::Approx(1.0));
    CHECK(dist[1].prob == doctest::Approx(0.1));

    auto at_one = outcome_distribution(mset, StateParam(1.0));
    REQUIRE(at_one.size() == 1);
    CHECK(at_one[0].index == 0);
    CHECK(at_one[0].post.value() == doctest::Approx(1.0));
    CHECK(at_one[0].prob == doctest::Approx(1.0));

    auto ident = outcome_distribution(
        MeasurementSet::create({Op::make(OpKind::F1, 1.0, 1.0)}), StateParam(0.3));
    REQUIRE(ident.size() == 1);
    CHECK(ident[0].post.value() == doctest::Approx(0.3));

    auto g = test::rng(59);
    for (const auto& set :
         {amplitude_damping(0.36), phase_damping(0.5), bit_flip(0.3),
          generalized_amplitude_damping(0.4, 0.6)}) {
        for (int i = 0; i < 100; ++i) {
            double total = 0.0;
            for (const auto& o : outcome_distribution(set, StateParam(test::uniform(g)))) {
                CHECK(o.prob > 0.0);
                CHECK(o.prob <= 1.0 + 1e-12);
                total += o.prob;
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}
