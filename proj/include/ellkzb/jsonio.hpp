#pragma once

#include "ellkzb/connection.hpp"
#include "json.hpp"

namespace ellkzb {

using Json = nlohmann::ordered_json;

// All rationals are serialized as "p" or "p/q" strings; no floats touch
// exact data.
Json to_json(const Rat& r);
Json to_json(const CurvePoly& p);
Json to_json(const CurveFun& f);
Json to_json(const DiffForm1& w);
Json to_json(const DerLabel& l);
Json to_json(const Connection& c);

Rat rat_from_json(const Json& j);
CurvePoly poly_from_json(const Json& j);
CurveFun fun_from_json(const Json& j);
DiffForm1 form_from_json(const Json& j);
DerLabel label_from_json(const Json& j);
Connection connection_from_json(const Json& j);

}  // namespace ellkzb
