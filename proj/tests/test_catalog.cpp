#include <doctest.h>

#include <cmath>

#include "corruptlab/catalog.hpp"
#include "corruptlab/divergence.hpp"
#include "corruptlab/error.hpp"
#include "corruptlab/reconstruct.hpp"

using namespace corruptlab;

namespace {

std::vector<double> sigma_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 9; ++i) g.push_back(0.05 * i);
  return g;
}

bool throws_invalid(const CorruptionSpec& spec) {
  try {
    build_kernel(spec);
  } catch (const Error& e) {
    return e.code() == ErrorCode::InvalidParameter;
  }
  return false;
}

}  // namespace

TEST_CASE("build_kernel examples") {
  CHECK(build_kernel(BinaryLabelNoise{0, 0}).matrix() == Matrix::identity(2));

  const Kernel bln = build_kernel(BinaryLabelNoise{0.1, 0.2});
  CHECK(bln.matrix() == Matrix::from_rows({{0.9, 0.2}, {0.1, 0.8}}));
  CHECK(bln.from().labels() == std::vector<std::string>{"-1", "+1"});

  const Kernel pl = build_kernel(PartialLabels{0.3});
  CHECK(pl.to().labels() == std::vector<std::string>{"001", "010", "011", "100", "101", "110", "111"});
  const std::vector<double> col3{0.49, 0, 0.21, 0, 0.21, 0, 0.09};
  for (std::size_t i = 0; i < 7; ++i) CHECK(pl.matrix()(i, 2) == doctest::Approx(col3[i]).epsilon(1e-15));
  // True label 1 is the leftmost bit.
  CHECK(pl.matrix()(3, 0) == doctest::Approx(0.49));
  CHECK(pl.matrix()(0, 0) == 0.0);

  const Kernel ssl = build_kernel(SemiSupervised{0.4, 0.4});
  CHECK(ssl.to().labels() == std::vector<std::string>{"-1", "+1", "?"});
  CHECK(max_abs_diff(ssl.matrix(), Matrix::from_rows({{0.4, 0}, {0, 0.4}, {0.6, 0.6}})) <= 1e-15);

  const Kernel sym3 = build_kernel(SymmetricLabelNoise{3, 0.2});
  CHECK(max_abs_diff(sym3.matrix(), Matrix::from_rows({{0.8, 0.1, 0.1}, {0.1, 0.8, 0.1}, {0.1, 0.1, 0.8}})) <=
        1e-15);
  const Kernel sym5 = build_kernel(SymmetricLabelNoise{5, 0.4});
  CHECK(sym5.matrix()(0, 0) == doctest::Approx(0.6));
  CHECK(sym5.matrix()(3, 0) == doctest::Approx(0.1));
}

TEST_CASE("validation") {
  CHECK(throws_invalid(BinaryLabelNoise{-0.1, 0.2}));
  CHECK(throws_invalid(BinaryLabelNoise{0.1, 1.2}));
  CHECK(throws_invalid(SymmetricLabelNoise{1, 0.1}));
  CHECK(throws_invalid(SymmetricLabelNoise{3, std::nan("")}));
  CHECK(throws_invalid(SemiSupervised{0.5, 1.5}));
  CHECK(throws_invalid(PartialLabels{-0.01}));
  CHECK_THROWS_AS(closed_form_stats(PartialLabels{2}), Error);
  CHECK_NOTHROW(build_kernel(PartialLabels{1}));
  CHECK_NOTHROW(build_kernel(BinaryLabelNoise{1, 1}));
}

TEST_CASE("closed_form_stats examples") {
  const auto bln = closed_form_stats(BinaryLabelNoise{0.1, 0.2});
  CHECK(bln.alpha == doctest::Approx(0.7));
  CHECK(*bln.row_norm == doctest::Approx(1.1 / 0.7).epsilon(1e-12));
  CHECK(*bln.corrected01_norm == doctest::Approx(0.9 / 0.7).epsilon(1e-12));

  const auto sym3 = closed_form_stats(SymmetricLabelNoise{3, 0.2});
  CHECK(sym3.alpha == doctest::Approx(0.7));
  CHECK(*sym3.row_norm == doctest::Approx(2.2 / 1.4).epsilon(1e-12));
  CHECK(*sym3.corrected01_norm == doctest::Approx(1.6 / 1.4).epsilon(1e-12));

  const auto pl = closed_form_stats(PartialLabels{0.3});
  CHECK(pl.alpha == doctest::Approx(0.7));
  CHECK_FALSE(pl.row_norm);
  CHECK_FALSE(pl.corrected01_norm);

  const auto ssl = closed_form_stats(SemiSupervised{0.4, 0.4});
  CHECK(ssl.alpha == doctest::Approx(0.4));
  CHECK(*ssl.row_norm == doctest::Approx(2.5));
  CHECK_FALSE(closed_form_stats(SemiSupervised{0.3, 0.6}).row_norm);

  const auto flat = closed_form_stats(BinaryLabelNoise{0.5, 0.5});
  CHECK(flat.alpha == 0.0);
  CHECK_FALSE(flat.row_norm);
}

TEST_CASE("property: closed-form alpha matches the generic coefficient") {
  for (double a : sigma_grid()) {
    for (double b : sigma_grid()) {
      const BinaryLabelNoise bln{a, b};
      CHECK(std::abs(closed_form_stats(bln).alpha - alpha(build_kernel(bln))) <= 1e-12);
      const SemiSupervised ssl{a, b};
      CHECK(std::abs(closed_form_stats(ssl).alpha - alpha(build_kernel(ssl))) <= 1e-12);
    }
    const PartialLabels pl{a};
    CHECK(std::abs(closed_form_stats(pl).alpha - alpha(build_kernel(pl))) <= 1e-12);
    for (int k = 2; k <= 6; ++k) {
      const SymmetricLabelNoise sym{k, a};
      CHECK(std::abs(closed_form_stats(sym).alpha - alpha(build_kernel(sym))) <= 1e-12);
    }
  }
}

TEST_CASE("property: closed-form norms match the generic reconstruction") {
  const auto check = [](const CorruptionSpec& spec, const Space& labels) {
    const auto stats = closed_form_stats(spec);
    const Kernel t = build_kernel(spec);
    if (!is_reconstructible(t)) return;
    const Reconstruction r = pseudoinverse(t);
    const double row_norm = op_norm_row_sum(r);
    const double c01 = corrected_sup_norm(r, zero_one_loss(labels));
    if (stats.row_norm) CHECK(std::abs(*stats.row_norm - row_norm) <= 1e-9);
    if (stats.corrected01_norm) CHECK(std::abs(*stats.corrected01_norm - c01) <= 1e-9);
    CHECK(c01 <= row_norm + 1e-12);
  };
  for (double a : sigma_grid()) {
    for (double b : sigma_grid()) check(BinaryLabelNoise{a, b}, binary_labels());
    if (a > 0) check(SemiSupervised{a, a}, binary_labels());
    check(PartialLabels{a}, Space({"1", "2", "3"}));
    for (int k = 2; k <= 6; ++k) {
      std::vector<std::string> names;
      for (int i = 1; i <= k; ++i) names.push_back(std::to_string(i));
      check(SymmetricLabelNoise{k, a}, Space(names));
    }
  }
  check(BinaryLabelNoise{0.7, 0.6}, binary_labels());
  check(SymmetricLabelNoise{3, 0.9}, Space({"1", "2", "3"}));
}

TEST_CASE("symmetric semi-supervised corrected 0-1 norm") {
  // Fitted rational form; the printed (1 − 2σ + 2σ²)/(2σ + 3σ − 5σ²) does not match.
  for (int i = 1; i <= 20; ++i) {
    const double s = 0.05 * i;
    const double computed = corrected_sup_norm(pseudoinverse(build_kernel(SemiSupervised{s, s})),
                                               zero_one_loss(binary_labels()));
    CHECK(computed == doctest::Approx((1 - 2 * s + 2 * s * s) / (s * (2 - 4 * s + 3 * s * s))).epsilon(1e-9));
    CHECK(computed <= 1 / s + 1e-12);
  }
}

TEST_CASE("family_at and reproduce_table") {
  CHECK(family_name(family_at("binary-noise", 0.2)) == "binary_label_noise");
  CHECK(std::get<SymmetricLabelNoise>(family_at("symmetric-noise", 0.1, 4)).classes == 4);
  CHECK_THROWS_AS(family_at("gaussian", 0.1), Error);

  const auto rows = reproduce_table("binary-noise", {0.2, 0.5}, 3);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].alpha_closed == doctest::Approx(0.6));
  CHECK(rows[0].alpha_numeric == doctest::Approx(0.6));
  CHECK(rows[0].max_abs_diff <= 1e-12);
  CHECK_FALSE(rows[1].reconstructible);
  CHECK(rows[1].note == "not reconstructible");
  CHECK_FALSE(rows[1].row_norm_numeric);

  const auto sym = reproduce_table("symmetric-noise", {0.2, 2.0 / 3.0}, 3);
  CHECK(sym[0].max_abs_diff <= 1e-9);
  CHECK_FALSE(sym[1].reconstructible);

  const auto ssl = reproduce_table("semi-supervised", {0.4}, 3);
  REQUIRE(ssl[0].corrected01_closed);
  CHECK(*ssl[0].corrected01_closed == doctest::Approx(published_semisupervised_corrected01(0.4)));
  CHECK(ssl[0].note.rfind("published corrected01 differs by", 0) == 0);
  CHECK(ssl[0].max_abs_diff <= 1e-9);
}
