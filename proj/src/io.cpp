#include "lpiso/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lpiso/errors.hpp"

namespace lpiso {

namespace {

template <class F>
auto guarded(F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

json vector_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector parse_vector(const json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "vector must be a JSON array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

std::vector<Vector> parse_values(const json& j, int dim) {
  if (!j.is_array()) throw Error(Errc::ParseError, "values must be a JSON array");
  std::vector<Vector> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    out.push_back(parse_vector(v));
    if (out.back().size() != dim) throw Error(Errc::DimensionMismatch, "value length differs from dim");
  }
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

// ---------------------------------------------------------------------------
// writers

json to_json(NormExponent p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

json to_json(const Interval& iv) { return json::array({iv.lo(), iv.hi()}); }

json to_json(const StepFn& f) {
  json vals = json::array();
  for (const auto& v : f.values()) vals.push_back(vector_json(v));
  return json{{"dim", f.dim()}, {"breaks", std::vector<double>(f.breaks().begin(), f.breaks().end())},
              {"values", std::move(vals)}};
}

json to_json(const StepFn2D& F) {
  json vals = json::array();
  for (const auto& v : F.values()) vals.push_back(vector_json(v));
  return json{{"dim", F.dim()},
              {"xbreaks", std::vector<double>(F.xbreaks().begin(), F.xbreaks().end())},
              {"ybreaks", std::vector<double>(F.ybreaks().begin(), F.ybreaks().end())},
              {"values", std::move(vals)}};
}

json to_json(const XSpec& x) { return json{{"dim", x.dim}, {"q", to_json(x.q)}}; }

json to_json(const XIsom& s) { return json{{"perm", s.perm()}, {"signs", s.signs()}}; }

json to_json(const LampertiIsometry& T) {
  json phi = json::array();
  for (const auto& pc : T.phi().pieces()) phi.push_back(json{{"src", to_json(pc.src)}, {"dst", to_json(pc.dst)}});
  json isoms = json::array();
  for (const auto& s : T.sigma().isoms()) isoms.push_back(to_json(s));
  return json{{"p", to_json(T.p())},
              {"xspec", to_json(T.xspec())},
              {"phi", std::move(phi)},
              {"sigma", json{{"breaks", T.sigma().breaks()}, {"isoms", std::move(isoms)}}}};
}

json to_json(const SumFn& F) {
  json comps = json::array();
  for (const auto& c : F.components()) {
    comps.push_back(json{{"id", c.id}, {"xspec", to_json(c.xspec)}, {"fn", to_json(c.fn)}});
  }
  return json{{"components", std::move(comps)}};
}

json to_json(const SumIsometry& T) {
  json word = json::array();
  for (const auto& g : T.word) {
    if (const auto* sw = std::get_if<Swap>(&g)) {
      word.push_back(json{{"kind", "swap"}, {"ids", {sw->first, sw->second}}});
    } else {
      json maps = json::array();
      for (const auto& [id, L] : std::get<ComponentWise>(g).maps) {
        maps.push_back(json{{"id", id}, {"isometry", to_json(L)}});
      }
      word.push_back(json{{"kind", "componentwise"}, {"maps", std::move(maps)}});
    }
  }
  return json{{"word", std::move(word)}};
}

json to_json(const SeparationWitness& w) {
  json A = json::array();
  for (const auto& iv : w.A) A.push_back(to_json(iv));
  return json{{"A", std::move(A)}, {"distance", w.distance}};
}

// ---------------------------------------------------------------------------
// parsers

NormExponent parse_exponent(const json& j) {
  return guarded([&] {
    if (j.is_string()) {
      const auto s = j.get<std::string>();
      if (s == "inf" || s == "infinity" || s == "INF") return NormExponent::infinity();
      throw Error(Errc::ParseError, "unknown exponent '" + s + "'");
    }
    return NormExponent(j.get<double>());
  });
}

StepFn parse_step_fn(const json& j) {
  return guarded([&] {
    const int dim = field(j, "dim").get<int>();
    return StepFn::from_cells(field(j, "breaks").get<std::vector<double>>(), parse_values(field(j, "values"), dim));
  });
}

StepFn2D parse_step_fn_2d(const json& j) {
  return guarded([&] {
    const int dim = field(j, "dim").get<int>();
    return StepFn2D(field(j, "xbreaks").get<std::vector<double>>(), field(j, "ybreaks").get<std::vector<double>>(),
                    parse_values(field(j, "values"), dim));
  });
}

XSpec parse_xspec(const json& j) {
  return guarded([&] { return XSpec(field(j, "dim").get<int>(), parse_exponent(field(j, "q"))); });
}

XIsom parse_xisom(const json& j) {
  return guarded(
      [&] { return XIsom(field(j, "perm").get<std::vector<int>>(), field(j, "signs").get<std::vector<int>>()); });
}

namespace {

Interval parse_interval(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::ParseError, "interval must be [lo, hi]");
  return Interval(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

LampertiIsometry parse_lamperti(const json& j) {
  return guarded([&] {
    std::vector<Piece> pieces;
    for (const auto& pc : field(j, "phi")) {
      pieces.push_back(Piece{parse_interval(field(pc, "src")), parse_interval(field(pc, "dst"))});
    }
    const json& sig = field(j, "sigma");
    std::vector<XIsom> isoms;
    for (const auto& s : field(sig, "isoms")) isoms.push_back(parse_xisom(s));
    return LampertiIsometry(RearrangeMap(std::move(pieces)), parse_exponent(field(j, "p")),
                            SigmaField(field(sig, "breaks").get<std::vector<double>>(), std::move(isoms)),
                            parse_xspec(field(j, "xspec")));
  });
}

SumFn parse_sum_fn(const json& j) {
  return guarded([&] {
    if (j.is_object() && j.contains("breaks")) {
      StepFn f = parse_step_fn(j);
      const XSpec x(f.dim(), 2.0);
      return SumFn::single(std::move(f), x);
    }
    std::vector<Component> comps;
    for (const auto& c : field(j, "components")) {
      comps.push_back(Component{field(c, "id").get<int>(), parse_step_fn(field(c, "fn")), parse_xspec(field(c, "xspec"))});
    }
    return SumFn(std::move(comps));
  });
}

SumIsometry parse_sum_isometry(const json& j) {
  return guarded([&] {
    if (j.is_object() && j.contains("phi")) return SumIsometry::componentwise(0, parse_lamperti(j));
    SumIsometry T;
    for (const auto& g : field(j, "word")) {
      const auto kind = field(g, "kind").get<std::string>();
      if (kind == "swap") {
        const auto ids = field(g, "ids").get<std::vector<int>>();
        if (ids.size() != 2) throw Error(Errc::ParseError, "swap needs exactly two ids");
        T.word.emplace_back(Swap{ids[0], ids[1]});
      } else if (kind == "componentwise") {
        ComponentWise cw;
        for (const auto& m : field(g, "maps")) {
          const int id = field(m, "id").get<int>();
          if (!cw.maps.emplace(id, parse_lamperti(field(m, "isometry"))).second) {
            throw Error(Errc::ParseError, "duplicate id in componentwise generator");
          }
        }
        T.word.emplace_back(std::move(cw));
      } else {
        throw Error(Errc::ParseError, "unknown generator kind '" + kind + "'");
      }
    }
    return T;
  });
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  return guarded([&] { return json::parse(in); });
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::InvalidArgument, "write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// CSV

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void csv_row(std::ostream& os, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) os << ',';
    os << csv_field(f);
    first = false;
  }
  os << "\r\n";
}

std::string digest(const StepFn& f) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](double x) {
    auto bits = std::bit_cast<std::uint64_t>(x);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (double b : f.breaks()) feed(b);
  for (const auto& v : f.values()) {
    for (Eigen::Index i = 0; i < v.size(); ++i) feed(v[i]);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lpiso
