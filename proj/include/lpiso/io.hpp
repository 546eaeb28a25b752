#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "lpiso/experiments.hpp"
#include "lpiso/step_function_2d.hpp"

namespace lpiso {

using json = nlohmann::json;

// JSON forms:
//   StepFn            {"dim": d, "breaks": [...], "values": [[...], ...]}
//   StepFn2D          {"dim": d, "xbreaks": [...], "ybreaks": [...], "values": [[...], ...]} (row-major)
//   XSpec             {"dim": d, "q": q | "inf"}
//   XIsom             {"perm": [...], "signs": [...]}
//   LampertiIsometry  {"p": p, "xspec": {...}, "phi": [{"src": [a,b], "dst": [c,d]}, ...],
//                      "sigma": {"breaks": [...], "isoms": [...]}}
//   SumFn             {"components": [{"id": i, "xspec": {...}, "fn": {...}}, ...]}
//   SumIsometry       {"word": [{"kind": "componentwise", "maps": [{"id": i, "isometry": {...}}]}
//                               | {"kind": "swap", "ids": [i, j]}, ...]}
// Doubles are written in shortest round-trip form, so write/parse is bit-stable.

json to_json(NormExponent p);
json to_json(const Interval& iv);
json to_json(const StepFn& f);
json to_json(const StepFn2D& F);
json to_json(const XSpec& x);
json to_json(const XIsom& s);
json to_json(const LampertiIsometry& T);
json to_json(const SumFn& F);
json to_json(const SumIsometry& T);
json to_json(const SeparationWitness& w);

// Parsers throw Error(ParseError) on malformed JSON and the domain error of
// the failed invariant otherwise. Parsed step functions keep their cell
// structure (no canonicalization).
NormExponent parse_exponent(const json& j);
StepFn parse_step_fn(const json& j);
StepFn2D parse_step_fn_2d(const json& j);
XSpec parse_xspec(const json& j);
XIsom parse_xisom(const json& j);
LampertiIsometry parse_lamperti(const json& j);
/// Also accepts a bare StepFn (one component, id 0, l^2 value norm).
SumFn parse_sum_fn(const json& j);
/// Also accepts a bare LampertiIsometry (componentwise on id 0).
SumIsometry parse_sum_isometry(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// 17 significant digits; "inf"/"-inf"/"nan" for non-finite values.
std::string csv_number(double x);
/// RFC 4180 quoting when needed.
std::string csv_field(std::string_view s);
/// One CSV record terminated by CRLF.
void csv_row(std::ostream& os, std::initializer_list<std::string> fields);

/// FNV-1a over the bit patterns of breaks and values, as 16 hex digits.
std::string digest(const StepFn& f);

}  // namespace lpiso
