#include <doctest.h>

#include <unistd.h>

#include "cli_runner.hpp"
#include "deodata/report.hpp"

namespace {

const std::string kTrain = std::string(DEODATA_DATA_DIR) + "/worked_example.csv";
const std::string kQuery = "a1,b2,c1,d0,e1,f2";

std::string predict(const std::string& extra) {
  return "predict --train '" + kTrain + "' --query " + kQuery + " " + extra;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("predict prints the winner, likelihoods and tie flag") {
  auto r = cli::run(predict("--algo deodata_rasturnat_pow_2"));
  CHECK(r.status == 0);
  CHECK(r.out == "t1\tt1=24 t2=22 t0=16\ttie_broken=false\n");

  r = cli::run(predict("--algo deodata_tbreak_delanga"));
  CHECK(r.out == "t1\tt1=1 t2=1\ttie_broken=true\n");

  r = cli::run(predict("--algo deodata_varsate --impurity gini --format json"));
  CHECK(r.status == 0);
  CHECK(r.out ==
        "{\"prediction\":\"t1\",\"likelihoods\":[{\"outcome\":\"t1\",\"score\":1.0},{\"outcome\":\"t2\",\"score\":1.0}],"
        "\"tie_broken\":true}\n");

  r = cli::run(predict("--algo deodata_rasturnat --base 2"));
  CHECK(r.out.rfind("t1\tt1=24 ", 0) == 0);
}

TEST_CASE("predict reads a query file") {
  const auto q = cli::scratch("queries.csv");
  {
    std::ofstream f(q);
    f << "a,b,c,d,e,f\n" << kQuery << "\na1,b0,c2,d0,e0,f1\n";
  }
  const auto r = cli::run("predict --train '" + kTrain + "' --query '" + q.string() + "' --algo decision_tree_id3");
  CHECK(r.status == 0);
  CHECK(count_lines(r.out) == 2);
  CHECK(r.out.substr(r.out.find('\n') + 1, 2) == "t1");
}

TEST_CASE("predict errors exit nonzero") {
  CHECK(cli::run("predict --train '" + kTrain + "' --query a1,b2").status != 0);
  CHECK(cli::run(predict("--algo nearest_neighbour")).status != 0);
  CHECK(cli::run(predict("--impurity variance")).status != 0);
  CHECK(cli::run("predict --train /nonexistent.csv --query x").status != 0);
  CHECK(cli::run("").status != 0);
}

TEST_CASE("benchmark output files are byte-identical for a repeated seed and any thread count") {
  const auto a = cli::scratch("bench_a"), b = cli::scratch("bench_b"), c = cli::scratch("bench_c");
  const std::string common = "benchmark --trials 4 --seed 99 ";
  REQUIRE(cli::run(common + "--out '" + a.string() + "'").status == 0);
  REQUIRE(cli::run(common + "--out '" + b.string() + "'").status == 0);
  REQUIRE(cli::run(common + "--threads 3 --out '" + c.string() + "'").status == 0);
  for (const char* ext : {".csv", ".json"}) {
    const auto ta = cli::slurp(a.string() + ext);
    CHECK_FALSE(ta.empty());
    CHECK(ta == cli::slurp(b.string() + ext));
    CHECK(ta == cli::slurp(c.string() + ext));
  }
  CHECK(count_lines(cli::slurp(a.string() + ".csv")) == 8);

  std::ifstream csv(a.string() + ".csv"), json(a.string() + ".json");
  const auto from_csv = deodata::read_experiment_csv(csv);
  CHECK(from_csv == deodata::read_experiment_json(json));
  CHECK(from_csv.rows.size() == 7);
  CHECK(cli::run(common + "--algo deodata_delanga,knn").status != 0);

  const auto d = cli::scratch("bench_d.csv");
  REQUIRE(cli::run("benchmark --trials 4 --seed 100 --format csv --out '" + d.string() + "'").status == 0);
  CHECK(cli::slurp(d) != cli::slurp(a.string() + ".csv"));
}

TEST_CASE("benchmark output does not depend on the matching kernel") {
  const auto v = cli::scratch("bench_vec.csv"), s = cli::scratch("bench_scalar.csv");
  const std::string cmd = "benchmark --trials 3 --seed 5 --format csv --out ";
  REQUIRE(cli::run(cmd + "'" + v.string() + "'").status == 0);
  ::setenv("DEODATA_SIMD", "scalar", 1);
  const auto r = cli::run(cmd + "'" + s.string() + "'");
  ::unsetenv("DEODATA_SIMD");
  REQUIRE(r.status == 0);
  CHECK(cli::slurp(v) == cli::slurp(s));
}

TEST_CASE("converge writes one row per size") {
  const auto p = cli::scratch("conv.csv");
  const auto r = cli::run("converge --trials 2 --format csv --out '" + p.string() + "'");
  REQUIRE(r.status == 0);
  const auto text = cli::slurp(p);
  CHECK(count_lines(text) == 8);
  CHECK(text.rfind("per outcome train no,deodata_delanga,decision_tree_id3,random_tree,uniform_random\n", 0) == 0);
  CHECK(cli::run("converge --trials 2 --sizes 4,2").status != 0);
}

TEST_CASE("saturate reports every algorithm") {
  const auto p = cli::scratch("sat.json");
  const auto r = cli::run("saturate --attributes 3 --values 3 --format json --out '" + p.string() + "'");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("combinations 27") != std::string::npos);
  const auto text = cli::slurp(p);
  CHECK(text.find("\"random_tree\"") != std::string::npos);
  CHECK(cli::run("saturate --mode-mass 1.5").status != 0);
}
