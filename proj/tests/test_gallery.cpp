#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "opclass/gallery.hpp"
#include "opclass/matrix.hpp"

using namespace opclass;

namespace {

void require_all_pass(const GalleryEntry& entry) {
  const auto results = run_expectations(entry);
  REQUIRE(results.size() == entry.expectations.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    INFO(entry.id, " expectation '", entry.expectations[i].name, "': ", results[i].detail);
    CHECK(results[i].passed);
  }
}

}  // namespace

TEST_CASE("the id list is stable and complete") {
  const std::vector<std::string> ids = gallery_ids();
  const std::vector<std::string> expected = {"ex-2.3.1", "ex-2.3.2", "ex-2.3.3", "ex-2.3.4",
                                             "ex-2.3.5", "ex-3.4",   "ex-4.4"};
  CHECK(ids == expected);
  for (const auto& id : ids) {
    const GalleryEntry entry = gallery_entry(id);
    CHECK(entry.id == id);
    CHECK_FALSE(entry.description.empty());
    CHECK(entry.matrix.rows() > 0);
    CHECK_FALSE(entry.expectations.empty());
  }
  CHECK_THROWS_AS(gallery_entry("ex-0.0"), ParameterError);
  CHECK_THROWS_WITH_AS(gallery_entry("nope"), doctest::Contains("unknown gallery id"),
                       ParameterError);
}

TEST_CASE("every packaged entry passes its own expectations") {
  for (const auto& id : gallery_ids()) {
    require_all_pass(gallery_entry(id));
  }
}

TEST_CASE("block-root entry scales to more blocks") {
  require_all_pass(block_weighted_shift_entry(8));
  CHECK_THROWS_AS(block_weighted_shift_entry(3), ParameterError);
}

TEST_CASE("perturbed shift entry accepts any small coupling") {
  require_all_pass(perturbed_shift_entry(0.2, 24));
  CHECK_THROWS_AS(perturbed_shift_entry(0.25, 16), ParameterError);
  CHECK_THROWS_AS(perturbed_shift_entry(0.0, 16), ParameterError);
  CHECK_THROWS_AS(perturbed_shift_entry(0.125, 3), ParameterError);
}

TEST_CASE("step weight entry works across the (n, k) grid") {
  require_all_pass(step_weight_shift_entry(2, 2));
  require_all_pass(step_weight_shift_entry(0, 3));
  CHECK_THROWS_AS(step_weight_shift_entry(1, 0), ParameterError);
  CHECK_THROWS_AS(step_weight_shift_entry(-1, 1), ParameterError);
}

TEST_CASE("front-loaded entry holds for any k >= 2") {
  require_all_pass(front_loaded_shift_entry(0, 3));
  require_all_pass(front_loaded_shift_entry(2, 2));
  CHECK_THROWS_AS(front_loaded_shift_entry(1, 1), ParameterError);
}

TEST_CASE("alternating isometry entry scales in dimension") {
  require_all_pass(alternating_isometry_entry(32));
  CHECK_THROWS_AS(alternating_isometry_entry(15), ParameterError);
  CHECK_THROWS_AS(alternating_isometry_entry(2), ParameterError);
}

TEST_CASE("nilpotent pair entry scales in block size") {
  require_all_pass(nilpotent_pair_entry(8));
  CHECK_THROWS_AS(nilpotent_pair_entry(0), ParameterError);
}

TEST_CASE("spectral shift entry tolerates larger truncations") {
  require_all_pass(shift_spectral_entry(0.125, 24));
  CHECK_THROWS_AS(shift_spectral_entry(0.3, 16), ParameterError);
}
