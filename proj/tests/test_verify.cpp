#include <doctest.h>

#include "pappus/verify.hpp"

using namespace pappus;

namespace {

VerifyConfig small() {
  VerifyConfig c;
  c.depth = 10;
  c.maxlen = 6;
  c.translate_len = 2;
  c.law_boxes = 50;
  c.law_maps = 10;
  c.word_pairs = 40;
  c.invariance_depth = 8;
  c.gp_lines = 40;
  return c;
}

}  // namespace

TEST_CASE("every check appears once, in order") {
  const auto r = verify_all(default_seed(), small());
  REQUIRE(r.checks.size() == check_names().size());
  for (std::size_t k = 0; k < r.checks.size(); ++k) CHECK(r.checks[k].name == check_names()[k]);
  const std::string text = format_report(r);
  CHECK(text.rfind("OVERALL\t" + r.overall_text + "\n") == text.size() - r.overall_text.size() - 9);
}

TEST_CASE("symmetric seed is degenerate") {
  const auto r = verify_all(symmetric_seed(), small());
  CHECK(r.overall == Status::Degenerate);
  CHECK(r.exit_code == 3);
  CHECK(r.checks[0].status == Status::Degenerate);
  const std::string text = format_report(r);
  CHECK(text.find("invariant_line\tdegenerate\t0\t") != std::string::npos);
  CHECK(text.find("[1,0,0]") != std::string::npos);
}

TEST_CASE("maxlen 0 is inconclusive") {
  VerifyConfig c = small();
  c.maxlen = 0;
  const auto r = verify_all(default_seed(), c);
  CHECK(r.overall_text == "inconclusive");
  CHECK(r.exit_code == 1);
  CHECK(format_report(r).find("insufficient search depth") != std::string::npos);
}

TEST_CASE("report is deterministic") {
  const auto a = format_report(verify_all(default_seed(), small()));
  const auto b = format_report(verify_all(default_seed(), small()));
  CHECK(a == b);
}
