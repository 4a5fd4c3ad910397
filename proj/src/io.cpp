#include "equising/io.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#ifndef EQUISING_CORPUS_DIR
#define EQUISING_CORPUS_DIR "corpus"
#endif

namespace equising {

namespace {

struct Piece {
  std::string text;
  std::size_t column = 1;  // 1-based column of text[0]
};

Piece trim(const Piece& p) {
  std::size_t b = p.text.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {"", p.column + p.text.size()};
  std::size_t e = p.text.find_last_not_of(" \t\r");
  return {p.text.substr(b, e - b + 1), p.column + b};
}

// Splits at `sep` outside parentheses.
std::vector<Piece> split_top(const Piece& p, char sep, std::size_t line) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < p.text.size(); ++i) {
    char c = p.text[i];
    if (c == '(') ++depth;
    if (c == ')' && --depth < 0) throw ParseError(line, p.column + i, "unbalanced `)`");
    if (c == sep && depth == 0) {
      out.push_back(trim({p.text.substr(start, i - start), p.column + start}));
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError(line, p.column + p.text.size(), "missing `)`");
  out.push_back(trim({p.text.substr(start), p.column + start}));
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::vector<std::string> name_list(const Piece& value, std::size_t line) {
  std::vector<std::string> names;
  if (trim(value).text.empty()) return names;
  for (const auto& item : split_top(value, ',', line)) {
    if (!is_identifier(item.text)) throw ParseError(line, item.column, "expected a variable name");
    names.push_back(item.text);
  }
  return names;
}

std::vector<Polynomial> poly_list(const Piece& value, const RingPtr& ring, std::size_t line) {
  std::vector<Polynomial> out;
  for (const auto& item : split_top(value, ',', line)) {
    if (item.text.empty()) throw ParseError(line, item.column, "empty entry");
    out.push_back(parse_polynomial(item.text, ring, line, item.column));
  }
  return out;
}

// "(p, q)" as a vector, anything else as a single polynomial.
PolyVector vector_value(const Piece& value, const RingPtr& ring, std::size_t line) {
  Piece v = trim(value);
  if (v.text.size() >= 2 && v.text.front() == '(' && v.text.back() == ')') {
    Piece inner{v.text.substr(1, v.text.size() - 2), v.column + 1};
    // "(a) + (b)" starts and ends with parentheses but is one polynomial.
    int depth = 0;
    bool wraps = true;
    for (std::size_t i = 0; i + 1 < v.text.size(); ++i) {
      if (v.text[i] == '(') ++depth;
      if (v.text[i] == ')') --depth;
      if (depth == 0) {
        wraps = false;
        break;
      }
    }
    if (wraps) {
      auto items = split_top(inner, ',', line);
      if (items.size() > 1) {
        PolyVector out;
        for (const auto& item : items) out.push_back(parse_polynomial(item.text, ring, line, item.column));
        return out;
      }
    }
  }
  if (v.text.empty()) throw ParseError(line, v.column, "empty entry");
  return {parse_polynomial(v.text, ring, line, v.column)};
}

struct Entry {
  std::size_t line = 0;
  std::string key;
  Piece value;
  std::string block;  // curve body
};

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
  return out;
}

std::string join(const std::vector<Polynomial>& ps) {
  std::vector<std::string> xs;
  for (const auto& p : ps) xs.push_back(p.to_string());
  return join(xs);
}

}  // namespace

Hyperplane parse_hyperplane(const std::string& text, const RingPtr& ring, std::size_t line, std::size_t column) {
  Polynomial form = parse_polynomial(text, ring, line, column);
  if (form.is_zero()) throw ParseError(line, column, "hyperplane form is zero");
  Hyperplane h;
  h.y_coeffs.assign(ring->y_count(), Rational(0));
  h.z_coeffs.assign(ring->z_count(), Rational(0));
  for (const auto& [m, c] : form.terms()) {
    if (m.degree() != 1) throw ParseError(line, column, "hyperplane must be a linear form without constant term");
    std::size_t v = 0;
    while (m[v] == 0) ++v;
    if (ring->is_y(v)) {
      h.y_coeffs[v] = c;
    } else if (ring->is_z(v)) {
      h.z_coeffs[v - ring->y_count()] = c;
    } else {
      throw ParseError(line, column, "hyperplane uses auxiliary variable `" + ring->name(v) + "`");
    }
  }
  return h;
}

ProblemFile parse_problem(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<Entry> entries;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    Piece line = trim({raw, 1});
    if (line.text.empty()) continue;
    if (!header) {
      if (line.text.rfind("equising", 0) != 0) throw ParseError(lineno, line.column, "expected header `equising 1`");
      if (line.text != kFormatHeader)
        throw ParseError(lineno, line.column, "unsupported format version `" + line.text + "`");
      header = true;
      continue;
    }
    if (line.text == "curve") {
      Entry e{lineno, "curve", {}, {}};
      bool closed = false;
      std::size_t body_start = lineno + 1;
      while (std::getline(in, raw)) {
        ++lineno;
        std::string stripped = raw.substr(0, raw.find('#'));
        if (trim({stripped, 1}).text == "end") {
          closed = true;
          break;
        }
        e.block += raw + "\n";
      }
      if (!closed) throw ParseError(e.line, 1, "curve block without `end`");
      e.value.column = body_start;  // first body line
      entries.push_back(std::move(e));
      continue;
    }
    auto colon = line.text.find(':');
    if (colon == std::string::npos) throw ParseError(lineno, line.column, "expected `key: value`");
    Entry e;
    e.line = lineno;
    e.key = trim({line.text.substr(0, colon), line.column}).text;
    e.value = trim({line.text.substr(colon + 1), line.column + colon + 1});
    entries.push_back(std::move(e));
  }
  if (!header) throw ParseError(lineno + 1, 1, "expected header `equising 1`");

  std::optional<std::vector<std::string>> vars, y, z, aux;
  std::size_t ring_line = 0;
  for (const auto& e : entries) {
    auto take = [&](std::optional<std::vector<std::string>>& slot) {
      if (slot) throw ParseError(e.line, 1, "duplicate `" + e.key + ":` line");
      slot = name_list(e.value, e.line);
      ring_line = e.line;
    };
    if (e.key == "vars") take(vars);
    if (e.key == "y") take(y);
    if (e.key == "z") take(z);
    if (e.key == "aux") take(aux);
  }
  if (vars && (y || z)) throw ParseError(ring_line, 1, "use either `vars:` or `y:`/`z:`");
  if (!vars && !y && !z) throw ParseError(lineno + 1, 1, "no ring declared");

  ProblemFile pf;
  std::vector<std::string> all;
  for (const auto* block : {&vars, &y, &z, &aux})
    if (*block) all.insert(all.end(), (*block)->begin(), (*block)->end());
  std::set<std::string> seen;
  for (const auto& n : all)
    if (!seen.insert(n).second) throw ParseError(ring_line, 1, "variable `" + n + "` declared twice");
  if (all.empty()) throw ParseError(ring_line, 1, "ring has no variables");
  pf.ring = RingContext::make(y.value_or(std::vector<std::string>{}),
                              vars ? *vars : z.value_or(std::vector<std::string>{}),
                              aux.value_or(std::vector<std::string>{}));
  const RingPtr& R = pf.ring;

  std::set<std::string> module_names;
  for (const auto& e : entries) {
    const std::string& k = e.key;
    if (k == "vars" || k == "y" || k == "z" || k == "aux") continue;
    if (k == "relations") {
      auto ps = poly_list(e.value, R, e.line);
      pf.relations.insert(pf.relations.end(), ps.begin(), ps.end());
    } else if (k == "f") {
      auto ps = poly_list(e.value, R, e.line);
      pf.f.insert(pf.f.end(), ps.begin(), ps.end());
    } else if (k == "g") {
      auto ps = poly_list(e.value, R, e.line);
      pf.g.insert(pf.g.end(), ps.begin(), ps.end());
    } else if (k == "K") {
      auto ps = poly_list(e.value, R, e.line);
      pf.K.insert(pf.K.end(), ps.begin(), ps.end());
    } else if (k == "F") {
      if (pf.F) throw ParseError(e.line, 1, "duplicate `F:` line");
      pf.F = parse_polynomial(e.value.text, R, e.line, e.value.column);
    } else if (k == "dimension") {
      if (e.value.text.empty() || e.value.text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(e.line, e.value.column, "dimension must be a non-negative integer");
      pf.dimension = static_cast<unsigned>(std::stoul(e.value.text));
    } else if (k == "element") {
      if (pf.element) throw ParseError(e.line, 1, "duplicate `element:` line");
      pf.element = vector_value(e.value, R, e.line);
    } else if (k == "hyperplane") {
      pf.hyperplanes.push_back(parse_hyperplane(e.value.text, R, e.line, e.value.column));
    } else if (k == "curve") {
      pf.curves.push_back(parse_curve(e.block, R, e.value.column));
    } else if (k == "assert") {
      for (const auto& item : split_top(e.value, ',', e.line)) {
        if (item.text == "equidimensional") {
          pf.equidimensional = true;
        } else if (item.text == "wa") {
          pf.wa = true;
        } else {
          throw ParseError(e.line, item.column, "unknown assertion `" + item.text + "`");
        }
      }
    } else if (k.rfind("ideal ", 0) == 0 || k.rfind("module ", 0) == 0) {
      NamedModule m;
      std::istringstream words(k);
      std::string kind;
      words >> kind >> m.name;
      m.ideal = kind == "ideal";
      if (!is_identifier(m.name)) throw ParseError(e.line, 1, "expected a name after `" + kind + "`");
      if (!module_names.insert(m.name).second) throw ParseError(e.line, 1, "duplicate name `" + m.name + "`");
      if (m.ideal) {
        for (auto& p : poly_list(e.value, R, e.line)) m.generators.push_back({p});
      } else {
        std::string rank;
        if (!(words >> rank) || rank.find_first_not_of("0123456789") != std::string::npos || rank == "0")
          throw ParseError(e.line, 1, "expected `module <name> <rank>:`");
        m.rank = std::stoul(rank);
        for (const auto& item : split_top(e.value, ';', e.line)) {
          PolyVector v = vector_value(item, R, e.line);
          if (v.size() != m.rank)
            throw ParseError(e.line, item.column,
                             "generator has " + std::to_string(v.size()) + " entries, rank is " + std::to_string(m.rank));
          m.generators.push_back(std::move(v));
        }
      }
      std::string rest;
      if (words >> rest) throw ParseError(e.line, 1, "unexpected `" + rest + "` in declaration");
      pf.modules.push_back(std::move(m));
    } else {
      throw ParseError(e.line, 1, "unknown key `" + k + "`");
    }
  }
  return pf;
}

std::string serialize(const ProblemFile& pf) {
  const RingPtr& R = pf.ring;
  std::ostringstream os;
  os << kFormatHeader << "\n";
  auto block = [&](std::size_t from, std::size_t count) {
    std::vector<std::string> names(R->names().begin() + from, R->names().begin() + from + count);
    return join(names);
  };
  if (R->y_count() == 0) {
    os << "vars: " << block(0, R->z_count()) << "\n";
  } else {
    os << "y: " << block(0, R->y_count()) << "\n";
    os << "z: " << block(R->y_count(), R->z_count()) << "\n";
  }
  if (R->aux_count() > 0) os << "aux: " << block(R->y_count() + R->z_count(), R->aux_count()) << "\n";
  if (!pf.relations.empty()) os << "relations: " << join(pf.relations) << "\n";
  if (!pf.f.empty()) os << "f: " << join(pf.f) << "\n";
  if (!pf.g.empty()) os << "g: " << join(pf.g) << "\n";
  if (pf.F) os << "F: " << pf.F->to_string() << "\n";
  if (!pf.K.empty()) os << "K: " << join(pf.K) << "\n";
  if (pf.dimension) os << "dimension: " << *pf.dimension << "\n";
  for (const auto& m : pf.modules) {
    if (m.ideal) {
      std::vector<Polynomial> gens;
      for (const auto& v : m.generators) gens.push_back(v[0]);
      os << "ideal " << m.name << ": " << join(gens) << "\n";
    } else {
      os << "module " << m.name << " " << m.rank << ": ";
      for (std::size_t i = 0; i < m.generators.size(); ++i) os << (i ? "; " : "") << "(" << join(m.generators[i]) << ")";
      os << "\n";
    }
  }
  if (pf.element) {
    if (pf.element->size() == 1) {
      os << "element: " << (*pf.element)[0].to_string() << "\n";
    } else {
      os << "element: (" << join(*pf.element) << ")\n";
    }
  }
  for (const auto& h : pf.hyperplanes) os << "hyperplane: " << h.form(R).to_string() << "\n";
  for (const auto& c : pf.curves) {
    if (!c.exact()) throw AlgebraError("only polynomial curves can be written to a problem file");
    os << "curve\n";
    for (std::size_t i = 0; i < c.components.size(); ++i)
      if (!c.components[i].known_zero()) os << "  " << R->name(i) << " = " << c.components[i].to_string() << "\n";
    os << "end\n";
  }
  std::vector<std::string> flags;
  if (pf.equidimensional) flags.push_back("equidimensional");
  if (pf.wa) flags.push_back("wa");
  if (!flags.empty()) os << "assert: " << join(flags) << "\n";
  return os.str();
}

// Serialization is canonical: polynomials print in one fixed term order.
bool equivalent(const ProblemFile& a, const ProblemFile& b) {
  return a.ring->compatible(*b.ring) && serialize(a) == serialize(b);
}

GermPresentation ProblemFile::germ() const {
  if (f.empty()) throw AlgebraError("problem file has no `f:` components");
  GermPresentation g;
  g.ring = ring;
  g.f = f;
  g.F = F;
  g.dimension = dimension;
  g.equidimensional = equidimensional;
  g.wa = wa;
  return g;
}

GermPresentation ProblemFile::second_structure() const {
  if (g.empty()) throw AlgebraError("problem file has no `g:` components");
  GermPresentation out = germ();
  out.f = g;
  return out;
}

SubmoduleSpec ProblemFile::module(std::size_t i) const {
  if (i >= modules.size())
    throw AlgebraError("problem file declares " + std::to_string(modules.size()) + " ideals or modules, needs " +
                       std::to_string(i + 1));
  return SubmoduleSpec(ring, modules[i].rank, modules[i].generators, relations);
}

IdealSpec ProblemFile::ideal(std::size_t i) const {
  SubmoduleSpec m = module(i);
  if (m.rank() != 1) throw AlgebraError("`" + modules[i].name + "` is a module, an ideal is needed");
  std::vector<Polynomial> gens;
  for (const auto& v : m.generators()) gens.push_back(v[0]);
  return IdealSpec(ring, gens);
}

std::string corpus_directory() {
  if (const char* env = std::getenv("EQUISING_CORPUS"); env && *env) return env;
  return EQUISING_CORPUS_DIR;
}

std::string resolve_input(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(path)) return path;
  for (const std::string& candidate : {path, path + ".eq"}) {
    fs::path p = fs::path(corpus_directory()) / candidate;
    if (fs::is_regular_file(p)) return p.string();
  }
  throw InputError("input file `" + path + "` not found (also searched " + corpus_directory() + ")");
}

ProblemFile load_problem(const std::string& path) {
  std::string resolved = resolve_input(path);
  std::ifstream in(resolved);
  if (!in) throw InputError("cannot read `" + resolved + "`");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

}  // namespace equising
