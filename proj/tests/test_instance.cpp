#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include "core/error.hpp"
#include "core/instance.hpp"

using kdm::Instance;
using kdm::Rational;
using kdm::RequestArrival;

namespace {

Instance tiny() {
    Instance inst;
    inst.k = 2;
    inst.d = 2;
    inst.servers = {{0, 1, Rational(1)}, {1, 2, Rational(3, 2)}};
    inst.arrivals = {{0, {0, 1}}, {1, {1}}, {2, {0, 1}}, {3, {1}}};
    return inst;
}

}  // namespace

TEST_CASE("kd validation: degree accounting") {
    Instance inst;
    inst.k = 2;
    inst.d = 2;
    inst.servers = {{0, 1, Rational(1)}};
    inst.arrivals = {{0, {0}}, {1, {0}}};
    CHECK(kdm::validate_kd_graph(inst).is_kd_graph());  // degree 2 >= k*b = 2

    inst.arrivals.pop_back();
    auto report = kdm::validate_kd_graph(inst);
    CHECK(!report.is_kd_graph());
    REQUIRE(report.offending_servers == std::vector<int>{0});
    CHECK(report.offending_requests.empty());

    // A request with too many neighbors is flagged on the request side.
    Instance wide = tiny();
    wide.arrivals.push_back({4, {0, 1}});
    wide.d = 1;
    auto wide_report = kdm::validate_kd_graph(wide);
    CHECK(!wide_report.is_kd_graph());
    CHECK(wide_report.offending_requests.size() == 3);
}

TEST_CASE("structural defects are reported distinctly from degree violations") {
    Instance inst = tiny();
    inst.arrivals[0].neighbors = {0, 0};
    auto report = kdm::validate_kd_graph(inst);
    CHECK(!report.structurally_ok());
    CHECK(!report.is_kd_graph());

    Instance bad_ref = tiny();
    bad_ref.arrivals[0].neighbors = {0, 7};
    CHECK(!kdm::validate_kd_graph(bad_ref).structurally_ok());

    Instance sparse_ids = tiny();
    sparse_ids.servers[1].id = 3;
    CHECK(!kdm::validate_kd_graph(sparse_ids).structurally_ok());

    Instance empty_neighbors = tiny();
    empty_neighbors.arrivals[1].neighbors.clear();
    CHECK(!kdm::validate_kd_graph(empty_neighbors).structurally_ok());
}

TEST_CASE("json round trip is the identity") {
    Instance inst = tiny();
    inst.metadata["note"] = "round trip";
    Instance back = kdm::parse_instance(kdm::instance_to_json(inst));
    CHECK(back == inst);

    // Via the filesystem as well.
    std::string path = "/tmp/kdm_test_instance.json";
    kdm::write_instance(inst, path);
    Instance from_file = kdm::read_instance(path);
    CHECK(from_file == inst);
    std::remove(path.c_str());
}

TEST_CASE("parse errors name the offending field") {
    CHECK_THROWS_WITH_AS(kdm::parse_instance(R"({"d":2,"servers":[],"arrivals":[]})"),
                         doctest::Contains("'k'"), kdm::Error);
    CHECK_THROWS_WITH_AS(kdm::parse_instance(R"({"k":2,"servers":[],"arrivals":[]})"),
                         doctest::Contains("'d'"), kdm::Error);
    CHECK_THROWS_WITH_AS(kdm::parse_instance(R"({"k":2,"d":2,"arrivals":[]})"),
                         doctest::Contains("'servers'"), kdm::Error);
    CHECK_THROWS_AS(kdm::parse_instance("{"), kdm::Error);
    CHECK_THROWS_AS(kdm::parse_instance(R"({"k":"x","d":2,"servers":[],"arrivals":[]})"),
                    kdm::Error);
    CHECK_THROWS_AS(kdm::read_instance("/nonexistent/path.json"), kdm::Error);
}

TEST_CASE("weights default to 1 and reject nonpositive values") {
    Instance inst = kdm::parse_instance(
        R"({"k":1,"d":2,"servers":[{"id":0,"capacity":1}],"arrivals":[{"id":0,"neighbors":[0]}]})");
    CHECK(inst.servers[0].weight == Rational(1));

    CHECK_THROWS_AS(kdm::parse_instance(
                        R"({"k":1,"d":2,"servers":[{"id":0,"capacity":1,"weight":"0/1"}],
                            "arrivals":[{"id":0,"neighbors":[0]}]})"),
                    kdm::Error);
    CHECK_THROWS_AS(kdm::parse_instance(
                        R"({"k":1,"d":2,"servers":[{"id":0,"capacity":1,"weight":"-2/3"}],
                            "arrivals":[{"id":0,"neighbors":[0]}]})"),
                    kdm::Error);
    // Integer weights are accepted and serialized back as "num/den".
    Instance w = kdm::parse_instance(
        R"({"k":1,"d":2,"servers":[{"id":0,"capacity":1,"weight":5}],"arrivals":[{"id":0,"neighbors":[0]}]})");
    CHECK(w.servers[0].weight == Rational(5));
    CHECK(kdm::instance_to_json(w).find("\"5/1\"") != std::string::npos);
}

TEST_CASE("random instances validate and are deterministic") {
    for (auto [k, d, b, n] : {std::tuple{2, 2, 1, 4}, {2, 2, 4, 64}, {3, 2, 2, 30}}) {
        Instance a = kdm::random_instance({k, d, b}, n, 1);
        CHECK(kdm::validate_kd_graph(a).is_kd_graph());
        CHECK(a.arrivals.size() >= static_cast<size_t>(n) * k * b / d);
        for (const auto& r : a.arrivals)
            CHECK(r.neighbors.size() == static_cast<size_t>(std::min(d, n)));

        Instance b2 = kdm::random_instance({k, d, b}, n, 1);
        CHECK(kdm::instance_to_json(a) == kdm::instance_to_json(b2));  // byte-identical
        Instance c = kdm::random_instance({k, d, b}, n, 2);
        CHECK(kdm::instance_to_json(a) != kdm::instance_to_json(c));
        CHECK(kdm::parse_instance(kdm::instance_to_json(a)) == a);  // round trip
    }
    CHECK_THROWS_AS(kdm::random_instance({2, 2, 1}, 1, 0), kdm::Error);  // n < d
}

TEST_CASE("variable-capacity random instances") {
    std::vector<int> caps = {1, 2, 4, 1, 2, 4};
    std::vector<Rational> weights = {Rational(1), Rational(2), Rational(1, 2),
                                     Rational(3), Rational(1), Rational(5, 4)};
    Instance inst = kdm::random_instance_variable(2, 2, caps, weights, 9);
    CHECK(kdm::validate_kd_graph(inst).is_kd_graph());
    CHECK(inst.servers[2].capacity == 4);
    CHECK(inst.servers[3].weight == Rational(3));
    CHECK(inst.total_capacity() == 14);
    CHECK(!inst.uniform_capacity());
    CHECK_THROWS_AS(kdm::random_instance_variable(2, 2, {1, 0}, {}, 1), kdm::Error);
    CHECK_THROWS_AS(
        kdm::random_instance_variable(2, 2, {1, 1}, {Rational(1), Rational(0)}, 1),
        kdm::Error);
}
