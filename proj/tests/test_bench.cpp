#include "fracpow/bench.hpp"
#include "fracpow/errors.hpp"
#include "fracpow/fracsolve.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace fracpow;
namespace fs = std::filesystem;

namespace {

Table scaled(Table t, double factor) {
  for (auto &r : t.rows)
    for (auto &v : r.values)
      v *= factor;
  return t;
}

fs::path copy_reference(const std::string &tag) {
  const auto dir = fs::temp_directory_path() / ("fracpow_ref_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const auto &e : fs::directory_iterator(default_reference_dir()))
    fs::copy_file(e.path(), dir / e.path().filename());
  return dir;
}

} // namespace

TEST_CASE("reference tables load with the expected shapes") {
  const auto dir = default_reference_dir();
  for (int id = 1; id <= 5; ++id) {
    const auto ref = load_reference(dir, id);
    const auto spec = SweepSpec::defaults(id);
    CHECK(ref.id == id);
    CHECK(ref.alphas == spec.alphas);
    const std::size_t errors = id == 1 ? 1 : 2;
    const std::size_t firsts = id == 1 ? spec.ms.size() : id <= 3 ? spec.ps.size() : spec.ns.size();
    const std::size_t seconds = id == 1 ? spec.ps.size() : spec.ms.size();
    CHECK(ref.rows.size() == firsts * seconds * errors);
  }
  CHECK(load_figure_anchors(dir).size() == 8);
  CHECK_THROWS_AS(load_reference(dir, 6), DomainError);
}

TEST_CASE("checksums catch edited reference files") {
  const auto dir = copy_reference("tamper");
  CHECK_NOTHROW(load_reference(dir.string(), 2));
  {
    std::ofstream os(dir / "table2.csv", std::ios::app);
    os << "9,9,eps2,1,1,1,1,1\n";
  }
  CHECK_THROWS_AS(load_reference(dir.string(), 2), IoError);
  fs::remove(dir / "checksums.txt");
  CHECK_THROWS_AS(load_reference(dir.string(), 3), IoError);
  fs::remove_all(dir);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("diff tolerance") {
  const auto ref = load_reference(default_reference_dir(), 2);
  const auto same = diff_against_reference(ref, ref, 0.01);
  CHECK(same.pass());
  CHECK(same.max_deviation == 0.0);
  CHECK(same.cells.size() == ref.rows.size() * ref.alphas.size());

  const auto close = diff_against_reference(scaled(ref, 1.005), ref, 0.01);
  CHECK(close.pass());
  CHECK(close.max_deviation == doctest::Approx(0.005));

  const auto far = diff_against_reference(scaled(ref, 1.02), ref, 0.01);
  CHECK_FALSE(far.pass());
  CHECK(far.failures().size() == far.cells.size());
  const auto j = nlohmann::json::parse(far.to_json());
  CHECK(j["pass"] == false);
  CHECK(j.contains("max_deviation"));

  auto truncated = ref;
  truncated.rows.pop_back();
  CHECK_THROWS_AS(diff_against_reference(truncated, ref, 0.01), DimensionError);
  auto rekeyed = ref;
  rekeyed.rows[0].second += 1;
  CHECK_THROWS_AS(diff_against_reference(rekeyed, ref, 0.01), DimensionError);
  CHECK_THROWS_AS(diff_against_reference(ref, ref, -1.0), DomainError);
}

TEST_CASE("CSV round trip") {
  auto spec = SweepSpec::defaults(4);
  spec.ns = {8, 16};
  spec.ms = {5, 10};
  spec.alphas = {0.3, 0.7};
  const auto t = run_table(spec);
  const auto back = Table::from_csv(t.to_csv(), 4);
  CHECK(back.first_name == "N");
  CHECK(back.second_name == "m");
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    CHECK(back.rows[r].values == t.rows[r].values);
  CHECK(back.to_csv() == t.to_csv());
  CHECK_THROWS_AS(Table::from_csv("", 4), IoError);
  CHECK_THROWS_AS(Table::from_csv("N,m,error,0.5\n8,5,eps2\n", 4), IoError);
  CHECK_THROWS_AS(Table::from_csv("N,m,error,0.5\n8,x,eps2,1\n", 4), IoError);
}

TEST_CASE("sweeps are deterministic across thread counts") {
  auto spec = SweepSpec::defaults(3);
  spec.ns = {16};
  spec.ms = {5, 25};
  spec.threads = 1;
  const auto serial = run_table(spec).to_csv();
  spec.threads = 4;
  CHECK(run_table(spec).to_csv() == serial);
  CHECK(run_table(spec).to_csv() == serial);
}

TEST_CASE("table cells carry provenance and match direct solves") {
  auto spec = SweepSpec::defaults(2);
  spec.ns = {16};
  spec.ps = {1};
  spec.ms = {25};
  spec.alphas = {0.5};
  const auto t = run_table(spec);
  REQUIRE(t.cells.size() == 2);
  const auto basis = SpectralBasis::analytic(Grid2D::unit_square(16));
  const auto rep = solution_report(SolverConfig{0.5, 1, 25, {}}, basis, rhs_f1(basis.grid()));
  for (const auto &c : t.cells) {
    CHECK(c.n == 16);
    CHECK(c.p == 1);
    CHECK(c.rhs == Rhs::f1);
    CHECK(c.value == (c.error == "eps2" ? rep.eps2 : rep.epsinf));
    CHECK(c.max_u == rep.max_u);
  }

  auto q = SweepSpec::defaults(1);
  q.ms = {25};
  q.ps = {0};
  q.alphas = {0.5};
  const auto t1 = run_table(q);
  REQUIRE(t1.rows.size() == 1);
  CHECK(t1.rows[0].error == "eps");
  CHECK(t1.rows[0].values[0] == quad_error_study(25, 0.5, 0).epsilon);
}

TEST_CASE("sweep validation") {
  CHECK_THROWS_AS(SweepSpec::defaults(0), DomainError);
  auto s = SweepSpec::defaults(2);
  s.ns = {64, 128};
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = SweepSpec::defaults(4);
  s.ps = {0, 1};
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = SweepSpec::defaults(4);
  s.ns = {1};
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.ns = {1 << 14};
  CHECK_THROWS_AS(s.validate(), CapacityError);
  s = SweepSpec::defaults(1);
  s.alphas = {1.0};
  CHECK_THROWS_AS(run_table(s), DomainError);
}
