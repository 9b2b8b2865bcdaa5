#include <doctest.h>

#include "helpers.hpp"
#include "qcharmlab/errors.hpp"
#include "qcharmlab/lipschitz.hpp"

using namespace qcharmlab;

namespace {

HarmonicMap identity_map() {
    const int n = 1024;
    std::vector<Complex> samples(n);
    for (int j = 0; j < n; ++j) samples[j] = std::polar(1.0, kTwoPi * j / n);
    return HarmonicMap::from_boundary_samples(samples);
}

}  // namespace

TEST_CASE("rho for disk maps") {
    DistanceField disk(qctest::unit_circle());
    auto spec = BarrierSpec::make(disk.kappa0(), 1.0, 0.0);

    auto id = identity_map();
    CHECK(std::fabs(compute_rho(id, disk, spec) - 0.5) < 1e-6);

    // Rotation: rho is invariant.
    const int n = 1024;
    std::vector<Complex> rot(n);
    for (int j = 0; j < n; ++j) {
        rot[j] = std::polar(1.0, kTwoPi * j / n + std::numbers::pi / 7.0);
    }
    auto rotation = HarmonicMap::from_boundary_samples(rot);
    CHECK(std::fabs(compute_rho(rotation, disk, spec) - 0.5) < 1e-6);
}

TEST_CASE("rho refinement oracle for the ellipse map") {
    auto aff = HarmonicMap::from_boundary_samples(
        qctest::affine_samples(1024, 1.0 / 3.0));
    DistanceField ell(qctest::ellipse(4.0 / 3.0, 2.0 / 3.0));
    auto spec = BarrierSpec::make(ell.kappa0(), 2.0, 0.0);
    double coarse = compute_rho(aff, ell, spec, 1024);
    double fine = compute_rho(aff, ell, spec, 10240);
    CHECK(std::fabs(coarse - fine) < 1e-4);
}

TEST_CASE("hopf certificate closed forms for the identity") {
    auto id = identity_map();
    DistanceField disk(qctest::unit_circle());
    auto spec = BarrierSpec::make(disk.kappa0(), 1.0, 0.0);
    auto audit = audit_subharmonicity(id, disk, spec, {16, 128}, false);

    auto cert = hopf_bound(id, disk, spec, audit);
    CHECK(std::fabs(cert.rho - 0.5) < 1e-6);
    CHECK(std::fabs(cert.M_rho - (std::exp(-1.0) - 1.0) / 2.0) < 1e-6);
    CHECK(std::fabs(cert.hopf_constant - 0.132482) < 1e-5);
    CHECK(cert.M_rho < 0);
    CHECK(cert.hopf_constant > 0);

    double bound = boundary_colip(id, spec, cert);
    CHECK(std::fabs(bound - 0.048733) < 1e-5);
    CHECK(std::fabs(bound - std::exp(-1.0) * cert.hopf_constant) < 1e-12);
}

TEST_CASE("failed audit blocks the hopf bound") {
    auto id = identity_map();
    DistanceField disk(qctest::unit_circle());
    auto spec = BarrierSpec::make(disk.kappa0(), 1.0, 0.0);
    auto audit = audit_subharmonicity(id, disk, spec, {16, 128}, false);
    audit.pass = false;
    CHECK_THROWS_WITH_AS(hopf_bound(id, disk, spec, audit),
                         doctest::Contains("NotSubharmonic"), Error);
}

TEST_CASE("boundary bound for the ellipse map stays below 2/3") {
    auto aff = HarmonicMap::from_boundary_samples(
        qctest::affine_samples(1024, 1.0 / 3.0));
    DistanceField ell(qctest::ellipse(4.0 / 3.0, 2.0 / 3.0));
    auto spec = BarrierSpec::make(ell.kappa0(), 2.0, 0.0);
    auto audit = audit_subharmonicity(aff, ell, spec, {32, 512}, false);
    auto cert = hopf_bound(aff, ell, spec, audit);
    double bound = boundary_colip(aff, spec, cert);
    CHECK(bound > 0);
    CHECK(bound <= 2.0 / 3.0);  // sampled min |dw/dr| is 2/3

    double min_dr = 1e9;
    for (int j = 0; j < 2048; ++j) {
        min_dr = std::min(min_dr,
                          std::abs(aff.radial_derivative(kTwoPi * j / 2048)));
    }
    CHECK(std::fabs(min_dr - 2.0 / 3.0) < 1e-9);
}

TEST_CASE("interior extension of affine maps") {
    // Identity: a = 0, b = C everywhere.
    auto id = identity_map();
    double C = 0.0487372;
    auto rep = interior_extension(id, C, 1.0, {16, 128});
    CHECK(std::fabs(rep.ab_max - C) < 1e-9);
    CHECK(std::fabs(rep.theoretical_colip - C) < 1e-12);
    CHECK(std::fabs(rep.min_l_grad - 1.0) < 1e-9);

    // z + conj(z)/3: a = 1/3, b = (C/K)/1; consistent iff C/K <= 2/3.
    auto aff = qctest::affine_map(1.0 / 3.0);
    auto rep2 = interior_extension(aff, 0.3, 2.0, {16, 128});
    CHECK(std::fabs(rep2.ab_max - (1.0 / 3.0 + 0.15)) < 1e-9);
    CHECK(std::fabs(rep2.min_l_grad - 2.0 / 3.0) < 1e-9);

    // A bound above l(grad w) violates the chain and is reported.
    CHECK_THROWS_AS(interior_extension(aff, 1.9, 2.0, {16, 128}), Error);
}

TEST_CASE("lewy violation detected for orientation-reversing input") {
    // w = conj(z): w_z = 0 everywhere.
    auto flip = HarmonicMap::from_coefficients({Complex(0)}, {Complex(1)});
    CHECK_THROWS_WITH_AS(interior_extension(flip, 0.1, 1.0, {8, 64}),
                         doctest::Contains("LewyViolation"), Error);
}

TEST_CASE("empirical bi-Lipschitz constants") {
    // Exact identity coefficients: quotients are exactly 1.
    auto id = qctest::affine_map(0.0);
    auto e1 = empirical_bilipschitz(id, 20000, 77);
    CHECK(std::fabs(e1.lip - 1.0) < 1e-12);
    CHECK(std::fabs(e1.colip - 1.0) < 1e-12);

    auto aff = qctest::affine_map(1.0 / 3.0);
    auto e2 = empirical_bilipschitz(aff, 100000, 77);
    CHECK(std::fabs(e2.lip - 4.0 / 3.0) < 2e-3);
    CHECK(std::fabs(e2.colip - 2.0 / 3.0) < 2e-3);
    CHECK(e2.colip <= e2.lip);

    // Rotation.
    auto rot = HarmonicMap::from_coefficients(
        {Complex(0), std::polar(1.0, 0.9)}, {});
    // Rounding in c * z over 1e-5 pair separations caps the achievable
    // agreement around 1e-11 for non-unit coefficients.
    auto e3 = empirical_bilipschitz(rot, 20000, 5);
    CHECK(std::fabs(e3.lip - 1.0) < 1e-9);
    CHECK(std::fabs(e3.colip - 1.0) < 1e-9);

    // Determinism of the sampler.
    auto e4 = empirical_bilipschitz(aff, 100000, 77);
    CHECK(e4.lip == e2.lip);
    CHECK(e4.colip == e2.colip);
}
