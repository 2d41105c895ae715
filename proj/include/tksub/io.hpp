#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "tksub/certify.hpp"
#include "tksub/errors.hpp"
#include "tksub/gadgets.hpp"
#include "tksub/graph.hpp"

namespace tksub {

using Json = nlohmann::ordered_json;

class ParseError : public Error {
 public:
  using Error::Error;
};

// "n <count>" followed by one "u v" line per edge. An empty document is the
// empty graph. Edge order in the input is free; output is canonical.
Graph parse_edge_list(std::istream& in);
std::string write_edge_list(const Graph& g);

Json to_json(const SubdivisionCertificate& c);
SubdivisionCertificate certificate_from_json(const Json& j);

Json to_json(const Hub& h);
Json to_json(const Unit& u);
Json to_json(const Expansion& f);
Json to_json(const Adjuster& a);
Json to_json(const Octopus& o);
Json to_json(const ValidationReport& r);

Hub hub_from_json(const Json& j);
Unit unit_from_json(const Json& j);
Expansion expansion_from_json(const Json& j);
Adjuster adjuster_from_json(const Json& j);
Octopus octopus_from_json(const Json& j);

// Reals in metadata carry 9 decimals.
std::string fixed9(double x);
double round9(double x);

}  // namespace tksub
