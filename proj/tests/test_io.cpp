#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "stein/errors.hpp"
#include "stein/io.hpp"
#include "stein/sampler.hpp"

using namespace stein;

TEST_CASE("CSV round trip is bit exact") {
  Rng rng(70);
  const SampleMatrix x = sample_vmf(VmfParams{Vector::Unit(4, 0), 3.0}, 200, rng);
  for (bool header : {false, true}) {
    std::stringstream ss;
    write_csv(ss, x.matrix(), header);
    const Matrix back = read_csv(ss);
    CHECK(back == x.matrix());
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("CSV errors") {
  std::stringstream ragged("1,0,0\n0,1\n");
  CHECK_THROWS_AS(read_csv(ragged), DomainError);
  std::stringstream text("1,0,0\n0,x,0\n");
  CHECK_THROWS_AS(read_csv(text), DomainError);
  std::stringstream empty("x1,x2\n");
  CHECK_THROWS_AS(read_csv(empty), DomainError);
  std::stringstream crlf("1,0\r\n0,1\r\n\n");
  CHECK(read_csv(crlf).rows() == 2);
}

TEST_CASE("parameter JSON") {
  const Params fb = params_from_json(Json::parse(R"({"family":"fb","mu":[1,2,3],"A":[[1,0,0],[0,2,0],[0,0,0]]})"));
  CHECK(family_of(fb) == Family::fb);
  CHECK(params_to_json(fb) == Json::parse(R"({"family":"fb","mu":[1.0,2.0,3.0],"A":[[1.0,0.0,0.0],[0.0,2.0,0.0],[0.0,0.0,0.0]]})"));
  const Params v = params_from_json(Json::parse(R"({"family":"vmf","mu":[0,1,0],"kappa":2})"));
  CHECK(std::get<VmfParams>(v).kappa == 2.0);
  CHECK(params_from_json(params_to_json(v)).index() == v.index());

  CHECK_THROWS_AS(params_from_json(Json::parse(R"({"family":"fb","mu":[1,2,3],"A":[[0,0,0],[0,0,0],[0,0,1]]})")), DomainError);
  CHECK_THROWS_AS(params_from_json(Json::parse(R"({"family":"fb","mu":[1,2,3],"A":[[0,0],[0,0,0],[0,0,0]]})")), DomainError);
  CHECK_THROWS_AS(params_from_json(Json::parse(R"({"family":"vmf","mu":[1,1,0],"kappa":2})")), DomainError);
  CHECK_THROWS_AS(params_from_json(Json::parse(R"({"family":"vmf","mu":[1,0,0]})")), DomainError);
  CHECK_THROWS_AS(params_from_json(Json::parse(R"({"mu":[1,0,0],"kappa":1})")), DomainError);
  CHECK_THROWS_AS(params_from_json(Json::parse(R"([1,2])")), DomainError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/params.json"), DomainError);
}
