#pragma once

#include "l1sp/scene.hpp"

namespace fixtures {

inline l1sp::Scene scene_a() {
    l1sp::Scene s;
    s.mode = l1sp::SceneMode::Polygonal;
    s.bbox = {-1, -1, 7, 7};
    s.obstacles.push_back(l1sp::Polygon{{{2, 1}, {5, 2}, {4, 6}, {1, 5}}});
    return s;
}

inline l1sp::Scene scene_w(l1sp::Rational weight = l1sp::Rational::from_fraction(1, 2)) {
    l1sp::Scene s;
    s.mode = l1sp::SceneMode::RectilinearWeighted;
    s.bbox = {-1, -1, 5, 5};
    s.obstacles.push_back(l1sp::Polygon{{{1, 1}, {3, 1}, {3, 3}, {1, 3}}});
    s.weights.push_back(weight);
    return s;
}

// [0,4]x[0,2] union [0,2]x[2,4]; reflex vertex at (2,2).
inline l1sp::Scene l_shape(l1sp::Rational weight = l1sp::Rational(1)) {
    l1sp::Scene s;
    s.mode = l1sp::SceneMode::RectilinearWeighted;
    s.bbox = {-2, -2, 6, 6};
    s.obstacles.push_back(l1sp::Polygon{{{0, 0}, {4, 0}, {4, 2}, {2, 2}, {2, 4}, {0, 4}}});
    s.weights.push_back(weight);
    return s;
}

}  // namespace fixtures
