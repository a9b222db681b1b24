#include <doctest.h>

#include <iostream>

#include "dww/verify.hpp"

// Each case runs one acceptance criterion through the same verification
// engine the CLI exposes (`dww verify <suite>`) and prints its measured line.

using dww::verify::CriterionResult;
using dww::verify::SuiteReport;

namespace {

CriterionResult pick(const SuiteReport& report, const std::string& id) {
  for (const auto& r : report.results)
    if (r.id == id) return r;
  const std::string missing = "criterion " + id + " missing from suite " + report.suite;
  REQUIRE_MESSAGE(false, missing);
  return {};
}

void show(const CriterionResult& r) {
  std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.description << ": "
            << r.detail << '\n';
}

}  // namespace

TEST_CASE("criterion 1: operator assembly matches the convolution oracle") {
  const CriterionResult r = pick(dww::verify::verify_operators(), "C1");
  show(r);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("criterion 2: exact semigroup against the matrix exponential") {
  const CriterionResult r = pick(dww::verify::verify_semigroup(), "C2");
  show(r);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("criterion 3: eigenvalue ratio inequality sweep") {
  const CriterionResult r = pick(dww::verify::verify_inequality(), "C3");
  show(r);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("criterion 4: unidirectional dissipation floor Re lambda >= delta") {
  const CriterionResult r = pick(dww::verify::verify_inequality(), "C4");
  show(r);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("criterion 5: bidirectional small-data decay at the viscous rate") {
  const CriterionResult r = pick(dww::verify::verify_decay_bi(), "C5");
  show(r);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("criterion 6: unidirectional small-data decay at half the viscous rate") {
  const CriterionResult r = pick(dww::verify::verify_decay_uni(), "C6");
  show(r);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("criterion 7: bounded small-data energy and loud large-data failure") {
  const CriterionResult r = pick(dww::verify::verify_decay_bi(), "C7");
  show(r);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("criterion 8: discrete energy balance and pairing identity") {
  const CriterionResult r = pick(dww::verify::verify_energy_balance(), "C8");
  show(r);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("criterion 9: temporal order two and spectral spatial agreement") {
  const CriterionResult r = pick(dww::verify::verify_convergence(), "C9");
  show(r);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("criterion 10: conservation of mean and reality over long runs") {
  const CriterionResult r = pick(dww::verify::verify_convergence(), "C10");
  show(r);
  INFO(r.detail);
  CHECK(r.pass);
}
