// Tensor-product spectral meshes: weights, the discrete divergence theorem,
// integration by parts, Laplacian accuracy against closed-form fields,
// band projection, and input validation.

#include <doctest.h>

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "biortho/common.hpp"
#include "biortho/mesh.hpp"
#include "biortho/models.hpp"

using namespace biortho;

namespace {

struct MeshCase {
  std::string label;
  ModelManifold model;
  std::array<int, 4> dims;
};

std::vector<MeshCase> mesh_cases() {
  std::vector<MeshCase> out;
  out.push_back({"s4", make_sphere4(1.0, 6), {10, 10, 10, 16}});
  out.push_back({"s4 radius 2", make_sphere4(2.0, 6), {8, 8, 8, 12}});
  out.push_back({"s2xs2", make_s2xs2(1.0, 1.0, 6), {10, 16, 10, 16}});
  out.push_back({"s2xs2 unequal", make_s2xs2(1.0, 2.0, 6), {10, 16, 8, 12}});
  out.push_back({"s2xt2", make_s2xt2(1.0, 2.0 * kPi, 2.0 * kPi, 6), {10, 16, 8, 8}});
  out.push_back({"t4", make_t4(2.0 * kPi, 2.0 * kPi, 2.0 * kPi, 2.0 * kPi, 6),
                 {8, 8, 8, 8}});
  out.push_back({"s3xs1", make_s3xs1(1.0, 2.0 * kPi, 6), {10, 10, 16, 8}});
  return out;
}

}  // namespace

TEST_CASE("mesh weights are positive and sum to the volume") {
  for (const MeshCase& c : mesh_cases()) {
    CAPTURE(c.label);
    const Mesh4 mesh = make_mesh(c.model, c.dims);
    CHECK(mesh.size() == c.dims[0] * c.dims[1] * c.dims[2] * c.dims[3]);
    CHECK(mesh.weights.minCoeff() > 0.0);
    CHECK(std::abs(mesh.weights.sum() - c.model.volume) <=
          1e-12 * c.model.volume);
    CHECK(mesh.volume == doctest::Approx(c.model.volume).epsilon(1e-13));
  }
}

TEST_CASE("node coordinates match evaluate()") {
  const Mesh4 mesh = make_mesh(make_s2xs2(1.0, 1.0, 6), {6, 8, 6, 8});
  const Field theta1 = mesh.evaluate([](const Vec4& p) { return p[0]; });
  for (int i = 0; i < mesh.size(); i += 7) {
    CHECK(theta1[i] == doctest::Approx(mesh.node(i)[0]).epsilon(1e-15));
  }
  // index() and node() are mutually consistent.
  const int flat = mesh.index(2, 3, 1, 5);
  const Vec4 p = mesh.node(flat);
  CHECK(p[0] == doctest::Approx(mesh.axes[0].coord[2]).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(mesh.axes[1].coord[3]).epsilon(1e-15));
  CHECK(p[2] == doctest::Approx(mesh.axes[2].coord[1]).epsilon(1e-15));
  CHECK(p[3] == doctest::Approx(mesh.axes[3].coord[5]).epsilon(1e-15));
}

TEST_CASE("laplacian annihilates constants and obeys the divergence theorem") {
  for (const MeshCase& c : mesh_cases()) {
    CAPTURE(c.label);
    const Mesh4 mesh = make_mesh(c.model, c.dims);
    const Field ones = Field::Ones(mesh.size());
    CHECK(mesh.laplacian(ones).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(mesh.gradsq(ones).cwiseAbs().maxCoeff() <= 1e-10);

    const SmoothField f = random_smooth_field(c.model, 17, 0.3);
    const Field u = mesh.evaluate(f.value);
    // Integral of a Laplacian over a closed manifold vanishes.
    const double div = mesh.integrate(mesh.laplacian(u));
    CHECK(std::abs(div) <= 1e-8 * mesh.volume);
  }
}

TEST_CASE("integration by parts couples laplacian and gradsq") {
  for (const MeshCase& c : mesh_cases()) {
    CAPTURE(c.label);
    const Mesh4 mesh = make_mesh(c.model, c.dims);
    const SmoothField f = random_smooth_field(c.model, 29, 0.3);
    const Field u = mesh.evaluate(f.value);
    const double lhs = -mesh.integrate(u.cwiseProduct(mesh.laplacian(u)));
    const double rhs = mesh.integrate(mesh.gradsq(u));
    CHECK(rhs >= -1e-10);
    CHECK(std::abs(lhs - rhs) <= 1e-7 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("laplacian reproduces the closed-form image of smooth fields") {
  for (const MeshCase& c : mesh_cases()) {
    CAPTURE(c.label);
    const Mesh4 mesh = make_mesh(c.model, c.dims);
    for (std::uint64_t seed : {3u, 11u}) {
      const SmoothField f = random_smooth_field(c.model, seed, 0.3);
      const Field u = mesh.evaluate(f.value);
      const Field lap_exact = mesh.evaluate(f.laplacian);
      const Field lap_mesh = mesh.laplacian(u);
      const double scale = std::max(1.0, lap_exact.cwiseAbs().maxCoeff());
      CHECK((lap_mesh - lap_exact).cwiseAbs().maxCoeff() <= 1e-8 * scale);
    }
  }
}

TEST_CASE("dirichlet gradient differentiates the gradient energy") {
  const ModelManifold model = make_s2xs2(1.0, 1.0, 6);
  const Mesh4 mesh = make_mesh(model, {8, 12, 8, 12});
  const SmoothField f = random_smooth_field(model, 5, 0.3);
  const SmoothField g = random_smooth_field(model, 6, 0.3);
  const Field u = mesh.evaluate(f.value);
  const Field d = mesh.evaluate(g.value);
  const auto energy = [&](const Field& v) { return mesh.integrate(mesh.gradsq(v)); };
  const double eps = 1e-6;
  const double fd = (energy(u + eps * d) - energy(u - eps * d)) / (2.0 * eps);
  const double an = mesh.dirichlet_gradient(u).dot(d);
  CHECK(std::abs(fd - an) <= 1e-5 * std::max(1.0, std::abs(an)));
}

TEST_CASE("band projection is an idempotent contraction preserving smooth fields") {
  const ModelManifold model = make_sphere4(1.0, 6);
  const Mesh4 mesh = make_mesh(model, {10, 10, 10, 16});
  const SmoothField f = random_smooth_field(model, 41, 0.3);
  const Field u = mesh.evaluate(f.value);

  const Field once = mesh.band_project(u);
  const Field twice = mesh.band_project(once);
  CHECK((twice - once).cwiseAbs().maxCoeff() <= 1e-10);

  // Low-order fields pass through unchanged; energies never grow.
  CHECK((once - u).cwiseAbs().maxCoeff() <= 1e-8);
  Field rough = u;
  rough[mesh.size() / 2] += 1.0;
  const Field smooth = mesh.band_project(rough);
  const double before = rough.cwiseProduct(mesh.weights).dot(rough);
  const double after = smooth.cwiseProduct(mesh.weights).dot(smooth);
  CHECK(after <= before * (1.0 + 1e-12));
}

TEST_CASE("grid refinement keeps integrals consistent") {
  const ModelManifold model = make_s2xs2(1.0, 2.0, 6);
  const SmoothField f = random_smooth_field(model, 13, 0.3);
  const Mesh4 coarse = make_mesh(model, {8, 12, 8, 12});
  const Mesh4 fine = make_mesh(model, {12, 18, 12, 18});
  const double ic = coarse.integrate(coarse.evaluate(f.value));
  const double iff = fine.integrate(fine.evaluate(f.value));
  CHECK(std::abs(ic - iff) <= 1e-8 * std::max(1.0, std::abs(iff)));
}

TEST_CASE("meshing validates its inputs") {
  CHECK_THROWS_AS(make_mesh(make_cp2(4), {8, 8, 8, 8}), std::invalid_argument);
  CHECK_THROWS_AS(make_mesh(make_sphere4(1.0, 4), {0, 8, 8, 8}),
                  std::invalid_argument);
}

TEST_CASE("smooth fields respect the amplitude bound") {
  const ModelManifold model = make_s3xs1(1.0, 2.0 * kPi, 6);
  const Mesh4 mesh = make_mesh(model, {8, 8, 12, 8});
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const SmoothField f = random_smooth_field(model, seed, 0.3);
    const Field u = mesh.evaluate(f.value);
    CHECK(u.cwiseAbs().maxCoeff() <= 0.3 + 1e-12);
  }
  // Deterministic in the seed.
  const SmoothField a = random_smooth_field(model, 7, 0.3);
  const SmoothField b = random_smooth_field(model, 7, 0.3);
  const Field ua = mesh.evaluate(a.value);
  const Field ub = mesh.evaluate(b.value);
  CHECK((ua - ub).cwiseAbs().maxCoeff() == 0.0);
}
