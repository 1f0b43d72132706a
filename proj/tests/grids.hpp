#pragma once

#include <string>
#include <utility>
#include <vector>

#include "crhs/liealg.hpp"

namespace crhs::testing {

// Documented parameter grids for the table rows.
inline std::vector<std::pair<std::string, RealMap>> table_grid() {
  std::vector<std::pair<std::string, RealMap>> g;
  const std::vector<double> reals = {-2, -0.5, 0, 0.5, 2};
  const std::vector<double> nonzero = {-2, -0.5, 0.5, 2};
  for (double a : reals)
    for (double b : nonzero) g.push_back({"g5_19", {{"alpha", a}, {"beta", b}}});
  for (double a : reals) g.push_back({"g5_20", {{"alpha", a}}});
  g.push_back({"g5_21", {}});
  g.push_back({"g5_22", {}});
  for (double b : nonzero) g.push_back({"g5_23", {{"beta", b}}});
  for (double s : {-1.0, 1.0}) g.push_back({"g5_24", {{"eps", s}}});
  for (double p : reals)
    for (double b : nonzero) g.push_back({"g5_25", {{"p", p}, {"beta", b}}});
  for (double p : reals)
    for (double s : {-1.0, 1.0}) g.push_back({"g5_26", {{"p", p}, {"eps", s}}});
  g.push_back({"g5_27", {}});
  for (double a : reals) g.push_back({"g5_28", {{"alpha", a}}});
  g.push_back({"g5_29", {}});
  for (double h : reals) g.push_back({"g5_30", {{"h", h}}});
  g.push_back({"g5_31", {}});
  for (double h : {-1.0, 0.0, 1.0}) g.push_back({"g5_32", {{"h", h}}});
  for (double b : reals)
    for (double c : reals) g.push_back({"g5_33", {{"beta", b}, {"gamma", c}}});
  for (double a : reals) g.push_back({"g5_34", {{"alpha", a}}});
  for (double a : reals)
    for (double b : reals) {
      g.push_back({"g5_35", {{"alpha", a}, {"beta", b}}});
      g.push_back({"g5_35_ext", {{"alpha", a}, {"beta", b}}});
    }
  for (const char* n : {"g5_36", "g5_37", "g5_38", "g5_39", "g5", "su2_g2", "sl2_g2"}) g.push_back({n, {}});
  return g;
}

}  // namespace crhs::testing
