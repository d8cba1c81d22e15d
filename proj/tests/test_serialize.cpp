#include <doctest.h>

#include "curvewidth/measures.hpp"
#include "curvewidth/report.hpp"
#include "curvewidth/serialize.hpp"

using namespace curvewidth;

TEST_CASE("body JSON round trip is exact") {
    CounterRng rng(3);
    for (const Space& s : {euclidean(2), spherical(2), hyperbolic(3)}) {
        CAPTURE(space_name(s));
        std::vector<Point> pts;
        for (int i = 0; i < 5; ++i) pts.push_back(sample_in_ball(reference_point(s), 0.7, rng));
        Body cloud(make_cloud(s, pts));
        std::string text = body_to_json(cloud);
        Body back = body_from_json(text);
        REQUIRE(back.is_cloud());
        REQUIRE(back.as_cloud().points.size() == pts.size());
        for (size_t i = 0; i < pts.size(); ++i)
            for (int k = 0; k < pts[i].x.n; ++k)
                CHECK(back.as_cloud().points[i].x[k] == pts[i].x[k]);
        CHECK(body_to_json(back) == text);
    }

    Body rt(reuleaux_triangle(hyperbolic(2), 1.0));
    std::string text = body_to_json(rt);
    Body back = body_from_json(text);
    REQUIRE(back.is_ball_polytope());
    CHECK(back.as_ball_polytope().radius == rt.as_ball_polytope().radius);
    CHECK(body_to_json(back) == text);

    OracleBody ob;
    ob.space = euclidean(2);
    ob.bounding = {reference_point(euclidean(2)), 1.0};
    ob.contains = [](const Point&) { return true; };
    CHECK_THROWS_AS(body_to_json(Body(ob)), std::invalid_argument);
    CHECK_THROWS_AS(body_from_json("{\"space\":\"euclidean\",\"dim\":2,\"variant\":\"weird\"}"),
                    std::invalid_argument);
}

TEST_CASE("check reports serialize with stable key order") {
    CheckReport rep;
    rep.check_name = "demo";
    rep.space = hyperbolic(2);
    rep.parameters = {{"R", 1.0}, {"eta", 0.25}};
    rep.trials = 10;
    rep.pass = true;
    rep.seed = 99;
    std::string j = rep.to_json();
    CHECK(j.find("\"check\":\"demo\"") != std::string::npos);
    CHECK(j.find("duration") == std::string::npos);
    rep.duration_ms = 12.5;
    CHECK(rep.to_json(false) == j);  // duration stays out unless requested
    CHECK(rep.to_json(true).find("duration_ms") != std::string::npos);
    // Key order is fixed: check precedes space precedes parameters.
    CHECK(j.find("\"check\"") < j.find("\"space\""));
    CHECK(j.find("\"space\"") < j.find("\"parameters\""));
}
