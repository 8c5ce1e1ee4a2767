#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gridstar/mesh.hpp"
#include "gridstar/reduce.hpp"
#include "gridstar/smooth.hpp"
#include "gridstar/starcomb.hpp"
#include "gridstar/surface.hpp"

namespace gridstar::io {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
/// Writes to a temporary sibling and renames it over `path`.
void atomic_write(const std::string& path, const std::string& content);

/// "%.17g"
std::string fmt(double x);

Json to_json(const Star& s);
/// Accepts {"cycle":[...]} or {"faces":[[u,v],...]}.
Star star_from_json(const Json& j);
Json to_json(const StarClass& c);
Json to_json(const Symmetry& g);
Json to_json(const ReductionCertificate& c);
Json to_json(const SquaredLink& l);
Json to_json(const LemmaReport& r);
Json to_json(const ReferenceVerdict& v);
Json to_json(const ClassificationCheck& c);
Json to_json(const ClassCertificate& c);

Json to_json(const GriddedSurface& s);
GriddedSurface surface_from_json(const Json& j);
Json to_json(const std::vector<Cell3>& cells);
std::vector<Cell3> cells_from_json(const Json& j);
Json to_json(const SurfaceReport& r);

/// Summary without the samples.
Json to_json(const FieldReport& r);
/// Rows point[4], b1[4], b2[4], margin, case.
std::string field_csv(const FieldReport& r);
Json to_json(const MeshReport& r);

std::string classes_csv(const std::vector<StarClass>& classes);
std::string histogram_csv(const SurfaceReport& r);

}  // namespace gridstar::io
