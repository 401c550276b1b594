#pragma once

#include <string>
#include <utility>
#include <vector>

#include "maclane/base_field.hpp"
#include "maclane/poly.hpp"

namespace maclane {

using KPoly = std::vector<KElem>;

struct Segment {
    mpq_class slope;  // rise / run of the lower hull
    int length = 0;
    int start = 0;  // index of the left vertex
};

struct NewtonPolygon {
    std::vector<Segment> segments;            // slopes strictly increasing
    std::vector<std::pair<int, Val>> vertices;
    int zmult = 0;  // number of leading coefficients equal to zero (infinite slope part)
};

// Lower convex hull of (i, vals[i]) over finite entries; collinear points merged.
NewtonPolygon newton_polygon(const std::vector<Val>& vals);
NewtonPolygon newton_polygon(const BaseField& K, const KPoly& f);

KPoly parse_kpoly(const BaseField& K, const std::string& text, const std::string& var = "z");
KElem parse_kelem(const BaseField& K, const std::string& text);
std::string kpoly_str(const BaseField& K, const KPoly& f, const std::string& var = "z");
std::vector<std::string> kpoly_coeff_strs(const BaseField& K, const KPoly& f);

KElem resultant(const BaseField& K, const KPoly& f, const KPoly& g);
KElem sylvester_resultant(const BaseField& K, const KPoly& f, const KPoly& g);

// min valuation of the coefficients (inf for zero)
Val content_val(const BaseField& K, const KPoly& f);

}  // namespace maclane
