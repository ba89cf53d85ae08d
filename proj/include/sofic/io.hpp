#ifndef SOFIC_IO_HPP
#define SOFIC_IO_HPP

#include <string>

#include "sofic/constructions.hpp"

namespace sofic {

/// Shift definition files:
///   { "alphabet": ["0","1"], "kind": "sft",   "forbidden": ["11"] }
///   { "alphabet": [...],     "kind": "graph", "states": [...], "edges": [[from,label,to],...] }
struct ShiftDefinition {
    std::string json_text; // canonical serialized form, kept for certificates
    FischerCover cover;
};

ShiftDefinition load_shift_json(const std::string& text);
ShiftDefinition load_shift_file(const std::string& path);

/// Textual point notation: (left)^inf . center . (right)^inf @ anchor
std::string format_point(const Alphabet& a, const EvPeriodicPoint& x);
EvPeriodicPoint parse_point(const Alphabet& a, const std::string& text);

/// Block codes serialize as a sorted rule table; only possible when the
/// window language fits the budget.
std::string block_code_to_json(const FischerCover& c, const BlockCode& g,
                               std::uint64_t budget = 200'000);

std::string marker_system_to_json(const Alphabet& a, const MarkerSystem& ms);
MarkerSystem marker_system_from_json(const Alphabet& a, const std::string& text);

/// Certificate transcript for audit and replay.
std::string certificate_to_json(const ShiftDefinition& shift, const Prop31Certificate& cert);

/// Re-runs the construction recorded in a certificate file and compares the
/// transcript; returns a human-readable report and sets ok.
std::string verify_certificate_json(const std::string& cert_text, bool& ok);

} // namespace sofic

#endif
