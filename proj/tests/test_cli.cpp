#include <doctest.h>

#include <sstream>

#include "clonopt/cli.hpp"
#include "clonopt/cloner.hpp"
#include "clonopt/errors.hpp"
#include "clonopt/json_io.hpp"

using namespace clonopt;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

} // namespace

TEST_CASE("cloner constants") {
  const auto j = run_json({"cloner", "constants", "--d", "2", "--n", "1", "--m", "2"});
  CHECK(j == Json::parse(R"({"gamma":[2,3],"delta_one":[1,6],"overlap":[2,3]})"));
}

TEST_CASE("omega max") {
  const auto j = run_json({"omega", "max", "--d", "3", "--n", "2", "--m", "4"});
  CHECK(j["omega_max"] == Json::parse("[7,5]"));
  CHECK(j["unique"] == true);
  CHECK(j["m_out"] == 4);
  CHECK(j["maximizers"][0]["m"] == Json::parse("[4,0,0]"));
  CHECK(j["maximizers"][0]["mu"] == Json::parse("[2,0,0]"));
  const auto threaded = run({"omega", "max", "--d", "3", "--n", "2", "--m", "4", "--threads", "3"});
  CHECK(threaded.out == run({"omega", "max", "--d", "3", "--n", "2", "--m", "4"}).out);
}

TEST_CASE("verify all on the smallest instance") {
  const auto r = run({"verify", "all", "--d", "2", "--n", "1", "--m", "2", "--seed", "7"});
  CHECK(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["failures"].empty());
  CHECK(j["checks"].size() >= 10u);
}

TEST_CASE("identical arguments give byte-identical output") {
  const std::vector<std::string> args{"cloner", "marginal", "--d", "3", "--n", "2", "--m", "4", "--seed", "11"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> delta{"channel", "delta-one", "--d", "2", "--n", "1", "--m", "3", "--seed", "5",
                                       "--samples", "30"};
  CHECK(run(delta).out == run(delta).out);
}

TEST_CASE("rationals are in lowest terms") {
  const auto j = run_json({"cloner", "constants", "--d", "3", "--n", "3", "--m", "6"});
  // γ = 3/6 · 9/6 = 3/4
  CHECK(j["gamma"] == Json::parse("[3,4]"));
  const auto p = run_json({"omega", "point", "--weight", "4,0", "--mu", "2,0"});
  CHECK(p["omega"] == Json::parse("[3,2]"));
  CHECK(p["omega_casimir"] == p["omega"]);
}

TEST_CASE("omega su2 and rep commands") {
  CHECK(run_json({"omega", "su2", "--alpha", "1", "--beta", "1/2", "--gamma", "1/2"})["omega"] == Json::parse("[4,3]"));
  const auto c = run_json({"rep", "casimir", "--weight", "3,2,1"});
  CHECK(c["normalized"] == "2,1,0");
  CHECK(c["c2_su"] == Json::parse("[6,1]"));
  CHECK(c["weyl_dimension"] == 8);
  const auto b = run_json({"rep", "branch", "--weight", "1,0", "--n", "1"});
  CHECK(b["branches"].size() == 2u);
  CHECK(b["dimension_sum"] == b["dimension_product"]);
  CHECK(run_json({"rep", "multiplicity", "--weight", "2,1"})["multiplicity"] == 2);
  CHECK(run_json({"rep", "adjoint", "--d", "6", "--n", "8"})["multiplicity"] == 1);
}

TEST_CASE("state inputs inline and from file") {
  const auto j = run_json({"cloner", "marginal", "--d", "2", "--n", "1", "--m", "2", "--input", "[1, 0]"});
  CHECK(std::abs(j["fidelity"].get<double>() - 5.0 / 6.0) < 1e-12);
  const auto apply = run_json({"cloner", "apply", "--d", "2", "--n", "1", "--m", "2", "--input",
                               R"({"rows":2,"cols":2,"entries":[[1,0],[0,0],[0,0],[0,0]]})"});
  const Matrix out = matrix_from_json(apply["output"]);
  CHECK(std::abs(out(0, 0).real() - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(out(1, 1).real() - 1.0 / 3.0) < 1e-12);

  const auto missing = run({"cloner", "marginal", "--input", "/nonexistent/state.json"});
  CHECK(missing.code == cli::exit_usage);
}

TEST_CASE("channel commands") {
  const auto omega = run_json({"channel", "omega", "--d", "2", "--n", "1", "--m", "3"});
  CHECK(std::abs(omega["omega"].get<double>() - 5.0 / 3.0) < 1e-8);
  const auto comp = run_json({"channel", "omega", "--n", "1", "--m", "3", "--alpha", "1/2", "--beta", "1"});
  CHECK(std::abs(comp["omega"].get<double>() - comp["expected"].get<double>()) < 1e-8);
  const auto defect = run_json({"channel", "defect", "--d", "3", "--n", "1", "--m", "2", "--samples", "5"});
  CHECK(defect["estimate"].get<double>() < 1e-10);
  CHECK(defect["samples"] == 5);
  const auto tw = run_json({"channel", "twirl", "--d", "2", "--n", "1", "--m", "2", "--samples", "5"});
  CHECK(tw["estimate"].get<double>() < 1e-10);
}

TEST_CASE("a non-covariant channel fails omega with exit 1") {
  const auto j = to_json(constant_output_channel(2, 1, 2));
  const auto r = run({"channel", "omega", "--channel", j.dump()});
  CHECK(r.code == cli::exit_numeric);
  CHECK(r.err.find("numeric") != std::string::npos);
}

TEST_CASE("channel JSON round trip") {
  const Channel t = optimal_cloner({3, 1, 2});
  const Channel back = channel_from_json(Json::parse(to_json(t).dump()));
  CHECK(back.input() == t.input());
  CHECK(back.output() == t.output());
  REQUIRE(back.kraus().size() == t.kraus().size());
  for (std::size_t k = 0; k < t.kraus().size(); ++k) CHECK((back.kraus()[k] - t.kraus()[k]).norm() == 0.0);
  CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"d":2})")), ConstraintError);
}

TEST_CASE("usage and guard exit codes") {
  CHECK(run({}).code == cli::exit_usage);
  CHECK(run({"cloner"}).code == cli::exit_usage);
  CHECK(run({"cloner", "constants", "--d", "x"}).code == cli::exit_usage);
  CHECK(run({"cloner", "constants", "--d", "2", "--n", "3", "--m", "2"}).code == cli::exit_usage);
  CHECK(run({"cloner", "constants", "--d", "1"}).code == cli::exit_usage);
  CHECK(run({"omega", "point", "--weight", "1,2", "--mu", "0,0"}).code == cli::exit_usage);
  CHECK(run({"omega", "su2", "--alpha", "2", "--beta", "0", "--gamma", "1"}).code == cli::exit_usage);
  CHECK(run({"cloner", "constants", "--format", "xml"}).code == cli::exit_usage);

  CHECK(run({"cloner", "constants", "--d", "9"}).code == cli::exit_guard);
  CHECK(run({"cloner", "constants", "--m", "65"}).code == cli::exit_guard);
  CHECK(run({"cloner", "constants", "--m", "65", "--guard", "4096"}).code == 0);
  CHECK(run({"omega", "max", "--d", "2", "--n", "1", "--m", "40"}).code == cli::exit_guard);
  CHECK(run({"channel", "omega", "--d", "2", "--n", "1", "--m", "14"}).code == cli::exit_guard);
}

TEST_CASE("table output") {
  const auto r = run({"cloner", "constants", "--format", "table"});
  CHECK(r.code == 0);
  CHECK(r.out.find("gamma") != std::string::npos);
  CHECK(r.out.find("2/3") != std::string::npos);
}

TEST_CASE("dims") {
  const auto j = run_json({"dims", "--d", "3", "--n", "2"});
  CHECK(j["sym_dimension"] == 6);
  CHECK(j["full_dimension"] == 9);
  CHECK(j["basis"][0] == Json::parse("[2,0,0]"));
}
