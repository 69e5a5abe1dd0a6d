#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "noa/bush.hpp"
#include "noa/design.hpp"
#include "noa/rng.hpp"
#include "noa/table1.hpp"

using namespace noa;

namespace {

Design from_strings(std::initializer_list<const char*> rows, Level s) {
  std::vector<std::vector<Level>> out;
  for (const char* r : rows) {
    std::vector<Level> row;
    for (const char* c = r; *c; ++c) row.push_back(static_cast<Level>(*c - '0'));
    out.push_back(row);
  }
  return Design::from_rows(out, s);
}

Design relabel(const Design& d, Seed seed) {
  std::vector<std::vector<std::uint32_t>> perms;
  for (std::size_t j = 0; j < d.factors(); ++j) {
    Stream rng(seed, {j});
    perms.push_back(random_permutation(d.levels(), rng));
  }
  std::vector<Level> entries;
  for (std::size_t i = 0; i < d.runs(); ++i)
    for (std::size_t j = 0; j < d.factors(); ++j) entries.push_back(perms[j][d(i, j)]);
  return Design(d.runs(), d.factors(), d.levels(), entries);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected noa::Error");
  return ErrorKind::InternalInvariant;
}

const Design oa4 = from_strings({"000", "011", "101", "110"}, 2);
const Design lhs4 = from_strings({"010", "132", "303", "221"}, 4);

}  // namespace

TEST_CASE("design construction rejects out-of-range entries") {
  CHECK(kind_of([] { (void)Design(2, 2, 2, {0, 1, 2, 0}); }) == ErrorKind::InvalidDesign);
  CHECK(kind_of([] { (void)Design(2, 2, 2, {0, 1, 1}); }) == ErrorKind::InvalidDesign);
}

TEST_CASE("check_strength on the small nested example") {
  auto r = check_strength(oa4, 2);
  CHECK(r.ok);
  CHECK(r.lambda == 1);
  r = check_strength(lhs4, 1);
  CHECK(r.ok);
  CHECK(r.lambda == 1);
  CHECK_FALSE(check_strength(oa4, 3).ok);
}

TEST_CASE("check_strength reports the first under-represented cell") {
  const Design zeros(4, 2, 2, std::vector<Level>(8, 0));
  const auto r = check_strength(zeros, 1);
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.violation);
  CHECK(r.violation->columns == std::vector<std::size_t>{0});
  CHECK(r.violation->levels == std::vector<Level>{1});
  CHECK(r.violation->observed == 0);
  CHECK(r.violation->expected == 2.0);
}

TEST_CASE("check_strength flags non-divisible run counts") {
  const Design three(3, 1, 2, {0, 1, 0});
  const auto r = check_strength(three, 1);
  REQUIRE_FALSE(r.ok);
  CHECK(r.violation->expected == 1.5);
  CHECK(r.violation->levels == std::vector<Level>{1});
}

TEST_CASE("check_strength rejects strengths outside [1, d]") {
  CHECK(kind_of([] { (void)check_strength(oa4, 0); }) == ErrorKind::BadStrength);
  CHECK(kind_of([] { (void)check_strength(oa4, 4); }) == ErrorKind::BadStrength);
}

TEST_CASE("Table 1 fixture") {
  const auto t1 = table1_design();
  REQUIRE(t1.runs() == 64);
  REQUIRE(t1.factors() == 5);

  SECTION("each column holds every level eight times") {
    const auto r = check_strength(t1, 1);
    CHECK(r.ok);
    CHECK(r.lambda == 8);
  }
  SECTION("collapsed to four levels it is strength 3 with index 1") {
    const auto r = check_strength(collapse(t1, 4), 3);
    CHECK(r.ok);
    CHECK(r.lambda == 1);
  }
  SECTION("columns 1..4 are strength 2 at eight levels") {
    const auto r = check_strength(select_columns(t1, {1, 2, 3, 4}), 2);
    CHECK(r.ok);
    CHECK(r.lambda == 1);
  }
  SECTION("as printed, column 0 is not pairwise balanced at eight levels") {
    // The printed table repeats (col0, col2) pairs; this pins the exact first gap.
    const auto r = check_strength(t1, 2);
    REQUIRE_FALSE(r.ok);
    CHECK(r.violation->columns == std::vector<std::size_t>{0, 2});
    CHECK(r.violation->levels == std::vector<Level>{0, 0});
    CHECK(r.violation->observed == 0);
  }
  SECTION("the shipped CSV matches the embedded fixture") {
    std::ifstream in(NOA_DATA_DIR "/table1.csv");
    REQUIRE(in);
    CHECK(read_design(in) == t1);
  }
}

TEST_CASE("collapse") {
  CHECK(collapse(lhs4, 2) == oa4);
  CHECK(collapse(lhs4, 4) == lhs4);
  CHECK(kind_of([] { (void)collapse(lhs4, 3); }) == ErrorKind::NotDivisor);
}

TEST_CASE("collapse scales the index by (s/s_coarse)^t") {
  // OA(64, 9, 8, 2) collapsed to 4 and 2 levels.
  const auto oa = bush_construct(FieldSpec::of_order(8), 2);
  for (Level coarse : {4u, 2u}) {
    const auto r = check_strength(collapse(oa, coarse), 2);
    CHECK(r.ok);
    CHECK(r.lambda == (8 / coarse) * (8 / coarse));
  }
}

TEST_CASE("replicate") {
  const auto twice = replicate(oa4, 2);
  CHECK(twice.runs() == 8);
  const auto r = check_strength(twice, 2);
  CHECK(r.ok);
  CHECK(r.lambda == 2);
  CHECK(replicate(oa4, 1) == oa4);

  const auto bush = bush_construct(FieldSpec::of_order(4), 3);
  const auto dropped = select_columns(bush, {1, 2, 3, 4});
  const auto r3 = check_strength(replicate(dropped, 2), 3);
  CHECK(r3.ok);
  CHECK(r3.lambda == 2);
}

TEST_CASE("select_columns") {
  const auto oa9 = bush_construct(FieldSpec::of_order(3), 2);
  const auto first3 = select_columns(oa9, {0, 1, 2});
  const auto r = check_strength(first3, 2);
  CHECK(r.ok);
  CHECK(r.lambda == 1);
  CHECK(select_columns(oa9, {0, 1, 2, 3}) == oa9);

  const auto swapped = select_columns(lhs4, {2, 0});
  REQUIRE(swapped.factors() == 2);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(swapped(i, 0) == lhs4(i, 2));
    CHECK(swapped(i, 1) == lhs4(i, 0));
  }
  CHECK(check_strength(swapped, 1).ok);

  CHECK(kind_of([&] { (void)select_columns(oa9, {0, 4}); }) == ErrorKind::BadIndex);
  CHECK(kind_of([&] { (void)select_columns(oa9, {1, 1}); }) == ErrorKind::Duplicate);
}

TEST_CASE("strength is monotone and invariant under level relabeling") {
  std::vector<Design> designs = {oa4, lhs4, bush_construct(FieldSpec::of_order(3), 3),
                                 bush_construct(FieldSpec::of_order(5), 2), table1_design()};
  for (Seed seed = 0; seed < 20; ++seed) {
    for (const auto& d : designs) {
      for (std::size_t t = 1; t <= std::min<std::size_t>(d.factors(), 3); ++t) {
        const auto base = check_strength(d, t);
        const auto moved = check_strength(relabel(d, seed), t);
        CHECK(base.ok == moved.ok);
        CHECK(base.lambda == moved.lambda);
        if (base.ok && t >= 2) CHECK(check_strength(d, t - 1).ok);
      }
    }
  }
}

TEST_CASE("design CSV round trip and rejection") {
  const auto d = bush_construct(FieldSpec::of_order(4), 2);
  std::stringstream buf;
  write_design(buf, d, "ladder=(4,2) seed=3");
  CHECK(buf.str().rfind("# noa-design v1 n=16 d=5 s=4 ladder=(4,2) seed=3\n", 0) == 0);
  CHECK(read_design(buf) == d);

  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_design(in);
  };
  CHECK(kind_of([&] { (void)parse("# noa-design v1 n=2 d=2 s=2\n0,1\n1,2\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([&] { (void)parse("# other v1 n=1 d=1 s=2\n0\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([&] { (void)parse("# noa-design v1 n=2 d=2 s=2\n0,1\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([&] { (void)parse("# noa-design v1 n=1 d=2 s=2\n0\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([&] { (void)parse("# noa-design v1 n=1 d=1 s=2\n-1\n"); }) == ErrorKind::Parse);
  CHECK(parse("# noa-design v1 n=1 d=2 s=3\n2, 0\n\n") == Design(1, 2, 3, {2, 0}));
}
