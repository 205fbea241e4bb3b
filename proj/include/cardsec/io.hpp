#pragma once

// JSON forms of every artifact and report. Objects are std::map backed, so
// keys always serialize in sorted order.

#include "cardsec/designs.hpp"
#include "cardsec/geometric.hpp"
#include "cardsec/strategy.hpp"
#include "cardsec/transversal.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cardsec::io {

using Json = nlohmann::json;

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

/// Throws ParseError naming the file on unreadable or malformed input.
Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

enum class Kind { Design, LargeSet, Announcement, Strategy, OrthogonalArray, TransversalDesign, TdLargeSet };
const char* to_string(Kind k);
/// Decides the schema from the keys present. Throws ParseError.
Kind detect_kind(const Json& j, const std::string& path);

Json to_json(const Hand& h);
Json to_json(const BigInt& x);  // number when it fits in 64 bits, else decimal string
Json to_json(const Rational& r);  // "p/q"

Json to_json(const designs::Design& d);
Json to_json(const designs::LargeSet& ls, unsigned t);
Json to_json(const strategy::Announcement& A);
Json to_json(const strategy::Strategy& s);
Json to_json(const transversal::OrthogonalArray& oa);
Json to_json(const transversal::TransversalDesign& td);
Json td_large_set_json(const std::vector<transversal::TransversalDesign>& members);
Json to_json(const geometric::GeometricAnnouncement& ga);

// `where` prefixes error messages, e.g. "witt.json".
designs::Design design_from_json(const Json& j, const std::string& where);
designs::LargeSet large_set_from_json(const Json& j, const std::string& where, unsigned* t = nullptr);
strategy::Announcement announcement_from_json(const Json& j, const std::string& where);
strategy::Strategy strategy_from_json(const Json& j, const std::string& where);
transversal::OrthogonalArray oa_from_json(const Json& j, const std::string& where);
transversal::TransversalDesign td_from_json(const Json& j, const std::string& where);
std::vector<transversal::TransversalDesign> td_large_set_from_json(const Json& j, const std::string& where);

// Reports
Json to_json(const strategy::SecurityVerdict& v);
Json to_json(const strategy::InformativeResult& r);
Json to_json(const strategy::Coverage& c);
Json to_json(const strategy::StrategyReport& r);
Json to_json(const strategy::Bounds& b);
Json to_json(const strategy::SimulationResult& r);
Json to_json(const designs::DesignProfile& p);
Json to_json(const designs::LargeSetReport& r);
Json to_json(const transversal::OaCheck& c);
Json to_json(const transversal::TransversalVerdict& v);
Json to_json(const transversal::ToolkitReport& r);
Json to_json(const geometric::GeometricSecurity& g);

}  // namespace cardsec::io
