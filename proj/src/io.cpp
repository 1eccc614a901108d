#include "spcover/io.hpp"

#include "spcover/voronoi.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace spcover {

namespace {

using nlohmann::json;

constexpr double kNormTolerance = 1e-6;

struct Token {
  std::string_view text;
  std::size_t line;
};

double to_number(const Token& t) {
  double v = 0.0;
  const char* end = t.text.data() + t.text.size();
  const auto [ptr, ec] = std::from_chars(t.text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ParseError("not a number: '" + std::string(t.text) + "'", t.line);
  return v;
}

UnitVector3 checked_point(const Vec3& v, std::size_t line) {
  if (std::abs(v.norm() - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "point norm " << v.norm() << " is not 1 within " << kNormTolerance;
    throw ParseError(os.str(), line);
  }
  return UnitVector3::normalized(v);
}

SphericalCode make_code(std::vector<UnitVector3> pts, std::size_t last_line) {
  try {
    return SphericalCode(std::move(pts));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), last_line);
  }
}

// Tokens per non-blank line, '#' comments removed.
std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  std::size_t lineno = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    ++lineno;
    std::string_view line = text.substr(pos, eol - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != ',') ++j;
      if (j > i) toks.push_back({line.substr(i, j - i), lineno});
      i = j + 1;
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
    pos = eol + 1;
  }
  return lines;
}

SphericalCode parse_sloane(const std::vector<std::vector<Token>>& lines) {
  std::vector<Token> toks;
  for (const auto& l : lines) {
    if (l.size() != 1) throw ParseError("expected one number per line", l.front().line);
    toks.push_back(l.front());
  }
  if (toks.empty()) throw ParseError("empty input", 1);
  if (toks.size() % 3 != 0) {
    std::ostringstream os;
    os << toks.size() << " numbers is not a multiple of 3";
    throw ParseError(os.str(), toks.back().line);
  }
  std::vector<UnitVector3> pts;
  for (std::size_t i = 0; i < toks.size(); i += 3) {
    const Vec3 v(to_number(toks[i]), to_number(toks[i + 1]), to_number(toks[i + 2]));
    pts.push_back(checked_point(v, toks[i].line));
  }
  return make_code(std::move(pts), toks.back().line);
}

SphericalCode parse_xyz(const std::vector<std::vector<Token>>& lines) {
  if (lines.empty()) throw ParseError("empty input", 1);
  std::vector<UnitVector3> pts;
  for (const auto& l : lines) {
    if (l.size() != 3) {
      std::ostringstream os;
      os << "expected 3 numbers, found " << l.size();
      throw ParseError(os.str(), l.front().line);
    }
    pts.push_back(checked_point(Vec3(to_number(l[0]), to_number(l[1]), to_number(l[2])), l[0].line));
  }
  return make_code(std::move(pts), lines.back().front().line);
}

SphericalCode parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(std::string("invalid JSON: ") + e.what(), line);
  }
  const json& rows = doc.is_object() ? doc.value("points", json()) : doc;
  if (!rows.is_array()) throw ParseError("expected an array of [x, y, z] or an object with \"points\"", 1);
  std::vector<UnitVector3> pts;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& r = rows[i];
    if (!r.is_array() || r.size() != 3 || !r[0].is_number() || !r[1].is_number() || !r[2].is_number())
      throw ParseError("point " + std::to_string(i + 1) + " is not [x, y, z]", 1);
    pts.push_back(checked_point(Vec3(r[0].get<double>(), r[1].get<double>(), r[2].get<double>()), 1));
  }
  return make_code(std::move(pts), 1);
}

}  // namespace

CodeFormat parse_format_name(std::string_view name) {
  if (name == "auto") return CodeFormat::Auto;
  if (name == "sloane") return CodeFormat::Sloane;
  if (name == "xyz") return CodeFormat::Xyz;
  if (name == "json") return CodeFormat::Json;
  if (name == "off") return CodeFormat::Off;
  throw DomainError("unknown format '" + std::string(name) + "'");
}

SphericalCode parse_code(std::string_view text, CodeFormat hint) {
  if (hint == CodeFormat::Off) throw DomainError("OFF files are output only");
  if (hint == CodeFormat::Auto) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && (text[first] == '{' || text[first] == '['))
      return parse_json(text);
    const auto lines = tokenize(text);
    const bool one_per_line =
        !lines.empty() && std::all_of(lines.begin(), lines.end(), [](const auto& l) { return l.size() == 1; });
    return one_per_line ? parse_sloane(lines) : parse_xyz(lines);
  }
  if (hint == CodeFormat::Json) return parse_json(text);
  const auto lines = tokenize(text);
  return hint == CodeFormat::Sloane ? parse_sloane(lines) : parse_xyz(lines);
}

SphericalCode read_code_file(const std::string& path, CodeFormat hint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_code(buf.str(), hint);
}

std::string format_coord(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string emit_code(const SphericalCode& code, CodeFormat format) {
  std::ostringstream os;
  switch (format) {
    case CodeFormat::Xyz:
      for (const auto& p : code.points())
        os << format_coord(p.x()) << ' ' << format_coord(p.y()) << ' ' << format_coord(p.z()) << '\n';
      break;
    case CodeFormat::Sloane:
      for (const auto& p : code.points())
        os << format_coord(p.x()) << '\n' << format_coord(p.y()) << '\n' << format_coord(p.z()) << '\n';
      break;
    case CodeFormat::Json: {
      os << "{\n  \"n\": " << code.size() << ",\n  \"points\": [\n";
      for (std::size_t i = 0; i < code.size(); ++i) {
        const auto& p = code[i];
        os << "    [" << format_coord(p.x()) << ", " << format_coord(p.y()) << ", " << format_coord(p.z()) << ']'
           << (i + 1 < code.size() ? ",\n" : "\n");
      }
      os << "  ]\n}\n";
      break;
    }
    case CodeFormat::Off: {
      std::vector<Triangle> tris;
      if (!is_rank_deficient(code)) tris = delaunay(code);
      os << "OFF\n" << code.size() << ' ' << tris.size() << " 0\n";
      for (const auto& p : code.points())
        os << format_coord(p.x()) << ' ' << format_coord(p.y()) << ' ' << format_coord(p.z()) << '\n';
      for (const Triangle& t : tris) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
      break;
    }
    case CodeFormat::Auto:
      throw DomainError("choose an output format");
  }
  return os.str();
}

std::string emit_entry_json(const CatalogEntry& e, const SphericalCode& code) {
  auto stated = [](const StatedValue& v) {
    json j{{"text", v.text}, {"value", v.value}};
    if (v.polynomial) j["polynomial"] = v.polynomial->to_string();
    return j;
  };
  json j;
  j["n"] = e.n;
  j["status"] = to_string(e.status);
  j["construction"] = to_string(e.construction);
  j["scheme"] = e.scheme_id;
  j["table_radius_deg"] = e.table_radius_deg;
  j["reference_radius_deg"] = e.reference_radius_deg ? json(*e.reference_radius_deg) : json(nullptr);
  j["source_digits"] = e.source_digits;
  j["parameters"] = json::array();
  for (const Parameter& p : e.parameters) {
    json pj = stated(p.value);
    pj["name"] = p.name;
    j["parameters"].push_back(pj);
  }
  if (e.stated_height) j["stated_height"] = stated(*e.stated_height);
  if (e.stated_radius) j["stated_radius"] = stated(*e.stated_radius);
  j["notes"] = e.notes;
  j["points"] = json::array();
  for (const auto& p : code.points()) j["points"].push_back({p.x(), p.y(), p.z()});
  return j.dump(2) + "\n";
}

std::string emit_circles(const SphericalCode& code, double angular_radius, int segments) {
  if (segments < 3) throw DomainError("a circle needs at least 3 segments");
  std::ostringstream os;
  const double c = std::cos(angular_radius), s = std::sin(angular_radius);
  for (std::size_t i = 0; i < code.size(); ++i) {
    const auto [e1, e2] = tangent_basis(code[i]);
    if (i) os << '\n';
    os << "# cap " << i + 1 << '\n';
    for (int k = 0; k <= segments; ++k) {
      const double t = 2 * kPi * (k % segments) / segments;
      const Vec3 q = c * code[i].vec() + s * (std::cos(t) * e1 + std::sin(t) * e2);
      os << format_coord(q.x()) << ' ' << format_coord(q.y()) << ' ' << format_coord(q.z()) << '\n';
    }
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

}  // namespace spcover
