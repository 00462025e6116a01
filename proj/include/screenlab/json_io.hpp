#ifndef SCREENLAB_JSON_IO_HPP
#define SCREENLAB_JSON_IO_HPP

#include <json.hpp>

#include "screenlab/braiding.hpp"
#include "screenlab/voa.hpp"

namespace screenlab::json_io {

using nlohmann::json;

/// {"rank": r, "m": [["0", "1/2"], ...]} with rationals as strings.
BraidingMatrix braiding_from_json(const json& j);
json braiding_to_json(const BraidingMatrix& q);

/// {"rank": r, "gram": [["2", "-1"], ["-1", "2"]]}.
voa::Lattice lattice_from_json(const json& j);
json lattice_to_json(const voa::Lattice& lattice);

/// List of {"monomial": [[dir, order, mult], ...], "lattice": [coords],
/// "coeff": {"re": x, "im": y}}; coordinates are integers or rational
/// strings.
json element_to_json(const voa::VoaElement<Complex>& v);
voa::VoaElement<Complex> element_from_json(const json& j, int rank, int truncation);

Rational rational_from_json(const json& j);

}  // namespace screenlab::json_io

#endif
