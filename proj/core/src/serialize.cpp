#include "curvewidth/serialize.hpp"

#include <stdexcept>

#include <json.hpp>

namespace curvewidth {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json point_array(const std::vector<Point>& pts) {
    ordered_json arr = ordered_json::array();
    for (const Point& p : pts) {
        ordered_json row = ordered_json::array();
        for (int i = 0; i < p.x.n; ++i) row.push_back(p.x[i]);
        arr.push_back(row);
    }
    return arr;
}

std::vector<Point> parse_points(const Space& space, const ordered_json& arr) {
    std::vector<Point> pts;
    for (const auto& row : arr) {
        Vec v(static_cast<int>(row.size()));
        for (int i = 0; i < v.n; ++i) v[i] = row[static_cast<size_t>(i)].get<double>();
        pts.push_back(make_point(space, v));
    }
    return pts;
}

}  // namespace

std::string body_to_json(const Body& body) {
    ordered_json j;
    const Space& space = body.space();
    j["space"] = space_name(space);
    j["dim"] = space.dim;
    if (body.is_cloud()) {
        j["variant"] = "cloud";
        j["points"] = point_array(body.as_cloud().points);
    } else if (body.is_ball_polytope()) {
        j["variant"] = "ball_polytope";
        j["centers"] = point_array(body.as_ball_polytope().centers);
        j["radius"] = body.as_ball_polytope().radius;
    } else {
        throw std::invalid_argument("body_to_json: oracle bodies are not serializable");
    }
    Ball bb = body.bounding_ball();
    ordered_json bounding;
    ordered_json center = ordered_json::array();
    for (int i = 0; i < bb.center.x.n; ++i) center.push_back(bb.center.x[i]);
    bounding["center"] = center;
    bounding["radius"] = bb.radius;
    j["bounding"] = bounding;
    return j.dump();
}

Body body_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    Space space(parse_curvature(j.at("space").get<std::string>()), j.at("dim").get<int>());
    std::string variant = j.at("variant").get<std::string>();
    if (variant == "cloud")
        return Body(make_cloud(space, parse_points(space, j.at("points"))));
    if (variant == "ball_polytope")
        return Body(make_ball_polytope(space, parse_points(space, j.at("centers")),
                                       j.at("radius").get<double>()));
    throw std::invalid_argument("body_from_json: unknown variant " + variant);
}

}  // namespace curvewidth
