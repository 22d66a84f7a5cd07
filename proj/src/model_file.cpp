#include "gcm/model_file.hpp"
#include "gcm/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace gcm {

namespace {

[[noreturn]] void fail(ErrorKind k, int line, int col, const std::string &msg) {
  throw Error(k, "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg);
}

std::string trim(const std::string &s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos)
    return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int leading_spaces(const std::string &s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  return a == std::string::npos ? 0 : static_cast<int>(a);
}

bool all_digits(const std::string &s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// A coefficient times a symbol: "", an e-blade "e1^e3", or "x2".
struct Term {
  ParamPoly coeff;
  std::string symbol;
  int col = 0;
};

class ExprParser {
public:
  ExprParser(int line, int dim, const std::vector<std::string> &vars)
      : line_(line), dim_(dim), vars_(vars) {}

  std::vector<Term> terms(const std::string &text, int col0, bool symbols) const {
    std::vector<Term> out;
    int depth = 0, sign = 1;
    bool had_sign = false;
    std::size_t start = 0;
    auto flush = [&](std::size_t end) {
      std::string piece = text.substr(start, end - start);
      if (trim(piece).empty())
        fail(ErrorKind::SyntaxError, line_, col0 + static_cast<int>(end), "missing term");
      Term t = term(trim(piece), col0 + static_cast<int>(start) + leading_spaces(piece), symbols);
      t.coeff *= Scalar(sign);
      out.push_back(std::move(t));
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
      char ch = text[i];
      if (ch == '(')
        ++depth;
      else if (ch == ')' && --depth < 0)
        fail(ErrorKind::SyntaxError, line_, col0 + static_cast<int>(i), "unbalanced ')'");
      if (depth != 0 || (ch != '+' && ch != '-'))
        continue;
      if (trim(text.substr(start, i - start)).empty()) {
        if (had_sign)
          fail(ErrorKind::SyntaxError, line_, col0 + static_cast<int>(i), "repeated operator");
        had_sign = true;
        if (ch == '-')
          sign = -sign;
        start = i + 1;
        continue;
      }
      flush(i);
      had_sign = true;
      sign = ch == '-' ? -1 : 1;
      start = i + 1;
    }
    if (depth != 0)
      fail(ErrorKind::SyntaxError, line_, col0 + static_cast<int>(text.size()), "unbalanced '('");
    flush(text.size());
    return out;
  }

  ParamPoly poly(const std::string &text, int col0) const {
    ParamPoly p(static_cast<int>(vars_.size()));
    for (const auto &t : terms(text, col0, false))
      p += t.coeff;
    return p;
  }

private:
  Term term(const std::string &s, int col0, bool symbols) const {
    int m = static_cast<int>(vars_.size());
    Term t{ParamPoly::constant(m, Scalar(1)), "", col0};
    std::size_t pos = 0;
    while (pos < s.size()) {
      char ch = s[pos];
      if (ch == ' ' || ch == '\t' || ch == '*') {
        ++pos;
        continue;
      }
      int col = col0 + static_cast<int>(pos);
      if (ch == '(') {
        int depth = 0;
        std::size_t end = pos;
        for (; end < s.size(); ++end) {
          if (s[end] == '(')
            ++depth;
          else if (s[end] == ')' && --depth == 0)
            break;
        }
        std::string inner = s.substr(pos + 1, end - pos - 1);
        Scalar c;
        if (parse_scalar(trim(inner), c))
          t.coeff *= c;
        else
          t.coeff = t.coeff * poly(inner, col + 1);
        pos = end + 1;
        continue;
      }
      std::size_t end = pos;
      while (end < s.size() && s[end] != ' ' && s[end] != '\t' && s[end] != '*' && s[end] != '(')
        ++end;
      std::string tok = s.substr(pos, end - pos);
      pos = end;
      Scalar c;
      if (parse_scalar(tok, c)) {
        t.coeff *= c;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(tok[0])))
        fail(ErrorKind::SyntaxError, line_, col, "bad number '" + tok + "'");
      if (is_generator_token(tok)) {
        if (!symbols)
          fail(ErrorKind::SyntaxError, line_, col, "generator '" + tok + "' inside a coefficient");
        if (!t.symbol.empty())
          fail(ErrorKind::SyntaxError, line_, col, "two generators in one term");
        check_generator(tok, col);
        t.symbol = tok;
        continue;
      }
      std::string name = tok, power = "1";
      if (auto caret = tok.find('^'); caret != std::string::npos) {
        name = tok.substr(0, caret);
        power = tok.substr(caret + 1);
      }
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end())
        fail(ErrorKind::UnknownGenerator, line_, col, "unknown symbol '" + tok + "'");
      if (!all_digits(power))
        fail(ErrorKind::SyntaxError, line_, col, "bad exponent in '" + tok + "'");
      ParamPoly v = ParamPoly::var(m, static_cast<int>(it - vars_.begin()));
      for (int k = 0; k < std::stoi(power); ++k)
        t.coeff = t.coeff * v;
    }
    return t;
  }

  static bool is_generator_token(const std::string &tok) {
    return tok.size() >= 2 && (tok[0] == 'e' || tok[0] == 'x') &&
           std::isdigit(static_cast<unsigned char>(tok[1]));
  }

  void check_generator(const std::string &tok, int col) const {
    std::stringstream ss(tok);
    std::string part;
    std::set<int> seen;
    bool vector = tok[0] == 'x';
    if (tok.back() == '^' || tok.find("^^") != std::string::npos)
      fail(ErrorKind::SyntaxError, line_, col, "dangling '^' in '" + tok + "'");
    while (std::getline(ss, part, '^')) {
      if (part.size() < 2 || part[0] != tok[0] || !all_digits(part.substr(1)))
        fail(ErrorKind::SyntaxError, line_, col, "bad generator '" + tok + "'");
      int k = std::stoi(part.substr(1));
      if (k < 1 || k > dim_)
        fail(ErrorKind::UnknownGenerator, line_, col, "no generator '" + part + "' in dim " + std::to_string(dim_));
      if (!seen.insert(k).second)
        fail(ErrorKind::SyntaxError, line_, col, "repeated generator in '" + tok + "'");
    }
    if (vector && seen.size() != 1)
      fail(ErrorKind::SyntaxError, line_, col, "vectors do not wedge: '" + tok + "'");
  }

  int line_, dim_;
  const std::vector<std::string> &vars_;
};

// Mask and sign of an e-blade token such as "e3^e1".
std::pair<Blade, int> blade_of(const std::string &tok) {
  std::vector<int> idx;
  std::stringstream ss(tok);
  std::string part;
  while (std::getline(ss, part, '^'))
    idx.push_back(std::stoi(part.substr(1)) - 1);
  int inv = 0;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (idx[a] > idx[b])
        ++inv;
  Blade mask = 0;
  for (int k : idx)
    mask |= Blade(1) << k;
  return {mask, inv % 2 ? -1 : 1};
}

PolyForm to_polyform(const std::vector<Term> &terms, int dim, int nvars, int line) {
  PolyForm f(dim, nvars);
  for (const auto &t : terms) {
    if (!t.symbol.empty() && t.symbol[0] == 'x')
      fail(ErrorKind::SyntaxError, line, t.col, "vector in a form expression");
    auto [mask, sign] = t.symbol.empty() ? std::pair<Blade, int>{0, 1} : blade_of(t.symbol);
    f.add_blade(mask, t.coeff * Scalar(sign));
  }
  return f;
}

// Coordinates (x_1..x_n, e^1..e^n) of a vector/covector expression.
std::vector<ParamPoly> to_gen(const std::vector<Term> &terms, int dim, int nvars, int line,
                              bool allow_covectors) {
  std::vector<ParamPoly> out(2 * dim, ParamPoly(nvars));
  for (const auto &t : terms) {
    if (t.symbol.empty())
      fail(ErrorKind::SyntaxError, line, t.col, "constant term in a vector expression");
    if (t.symbol.find('^') != std::string::npos)
      fail(ErrorKind::SyntaxError, line, t.col, "expected a single generator");
    int k = std::stoi(t.symbol.substr(1)) - 1;
    if (t.symbol[0] == 'e' && !allow_covectors)
      fail(ErrorKind::SyntaxError, line, t.col, "I maps vectors to vectors");
    out[t.symbol[0] == 'x' ? k : dim + k] += t.coeff;
  }
  return out;
}

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ','))
    out.push_back(trim(part));
  return out;
}

Vec parse_values(const std::string &s, std::size_t count, int line, int col) {
  Vec out;
  for (const auto &p : split_list(s)) {
    Scalar c;
    if (!parse_scalar(p, c))
      fail(ErrorKind::SyntaxError, line, col, "bad parameter value '" + p + "'");
    out.push_back(c);
  }
  if (out.size() != count)
    fail(ErrorKind::SyntaxError, line, col,
         "expected " + std::to_string(count) + " parameter values");
  return out;
}

bool valid_name(const std::string &s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-';
  });
}

struct PendingFamily {
  FamilyBlock block;
  std::string type;
  bool has_omega = false;
  std::vector<std::vector<ParamPoly>> columns;  // images, one per basis element
};

} // namespace

const StructureBlock *ModelFile::find_structure(const std::string &name) const {
  for (const auto &b : structures)
    if (b.name == name)
      return &b;
  return nullptr;
}

const FamilyBlock *ModelFile::find_family(const std::string &name) const {
  for (const auto &b : families)
    if (b.name == name)
      return &b;
  return nullptr;
}

ModelFile parse_model(const std::string &text) {
  ModelFile mf;
  std::vector<std::string> no_vars;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::string section;  // "" for the header
  StructureBlock *cur_struct = nullptr;
  std::vector<PendingFamily> pending;
  GKBlock *cur_gk = nullptr;
  std::set<std::string> names;
  std::vector<bool> d_seen;
  bool h_seen = false;
  std::vector<bool> image_seen;

  auto finish_family = [&]() {
    if (section != "family")
      return;
    PendingFamily &pf = pending.back();
    FamilySpec &f = pf.block.spec;
    int dim = mf.dim, m = f.m();
    if (pf.type.empty())
      fail(ErrorKind::SyntaxError, pf.block.line, 1, "family without a type");
    if (f.kind == FamilyKind::Symplectic && !pf.has_omega)
      fail(ErrorKind::SyntaxError, pf.block.line, 1, "symplectic family without omega");
    if (f.kind != FamilyKind::Symplectic) {
      int size = f.kind == FamilyKind::Complex ? dim : 2 * dim;
      f.entries.assign(std::size_t(size) * size, ParamPoly(m));
      for (int col = 0; col < size; ++col)
        for (int row = 0; row < size; ++row)
          f.entries[std::size_t(row) * size + col] = pf.columns[col][row];
    }
    if (f.basepoint.empty())
      f.basepoint = Vec(m);
  };

  while (std::getline(in, raw)) {
    ++line;
    std::string content = raw.substr(0, raw.find('#'));
    std::string s = trim(content);
    if (s.empty())
      continue;
    int col0 = leading_spaces(content) + 1;
    if (s[0] == '[') {
      if (mf.dim == 0)
        fail(ErrorKind::SyntaxError, line, col0, "dim must come before any block");
      if (s.back() != ']')
        fail(ErrorKind::SyntaxError, line, col0, "unterminated block header");
      finish_family();
      std::istringstream hs(s.substr(1, s.size() - 2));
      std::string kind, name, extra;
      hs >> kind >> name >> extra;
      if (kind != "symplectic" && kind != "complex" && kind != "general" && kind != "family" &&
          kind != "gk")
        fail(ErrorKind::SyntaxError, line, col0 + 1, "unknown block kind '" + kind + "'");
      if (!extra.empty() || !valid_name(name))
        fail(ErrorKind::SyntaxError, line, col0 + 1, "block header needs one name");
      if (!names.insert(name).second)
        fail(ErrorKind::SyntaxError, line, col0 + 1, "duplicate block name '" + name + "'");
      section = kind;
      cur_struct = nullptr;
      cur_gk = nullptr;
      if (kind == "family") {
        pending.push_back({});
        pending.back().block.name = name;
        pending.back().block.line = line;
        pending.back().block.spec.name = name;
      } else if (kind == "gk") {
        mf.gks.push_back({name, "", "", line});
        cur_gk = &mf.gks.back();
      } else {
        StructureBlock b;
        b.kind = kind;
        b.name = name;
        b.line = line;
        b.omega = Form(mf.dim);
        b.B = Form(mf.dim);
        b.I = Mat(mf.dim, mf.dim);
        b.J = Mat(2 * mf.dim, 2 * mf.dim);
        mf.structures.push_back(b);
        cur_struct = &mf.structures.back();
        image_seen.assign(2 * mf.dim, false);
      }
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::SyntaxError, line, col0, "expected 'key = value'");
    std::string lhs = trim(s.substr(0, eq)), rhs = s.substr(eq + 1);
    int rcol = col0 + static_cast<int>(eq) + 1;
    std::istringstream ls(lhs);
    std::string key, arg, extra;
    ls >> key >> arg >> extra;
    if (!extra.empty())
      fail(ErrorKind::SyntaxError, line, col0, "unexpected '" + extra + "'");

    if (section.empty()) {
      if (key == "dim" && arg.empty()) {
        if (mf.dim != 0)
          fail(ErrorKind::SyntaxError, line, col0, "dim given twice");
        std::string v = trim(rhs);
        rcol += leading_spaces(rhs);
        if (!all_digits(v))
          fail(ErrorKind::SyntaxError, line, rcol, "dim must be a positive integer");
        int d = std::stoi(v);
        if (d % 2 != 0)
          fail(ErrorKind::DimensionOdd, line, rcol, "dim = " + v + " is odd");
        if (d < 2 || d > 8)
          fail(ErrorKind::SyntaxError, line, rcol, "dim must lie between 2 and 8");
        mf.dim = d;
        mf.structure.assign(d, Form(d));
        mf.H = Form(d);
        d_seen.assign(d, false);
        continue;
      }
      if (mf.dim == 0)
        fail(ErrorKind::SyntaxError, line, col0, "dim must come first");
      ExprParser ep(line, mf.dim, no_vars);
      if (key == "d" && arg.size() >= 2 && arg[0] == 'e' && all_digits(arg.substr(1))) {
        int k = std::stoi(arg.substr(1));
        if (k < 1 || k > mf.dim)
          fail(ErrorKind::UnknownGenerator, line, col0 + 2, "no generator '" + arg + "'");
        if (d_seen[k - 1])
          fail(ErrorKind::SyntaxError, line, col0, "d " + arg + " given twice");
        d_seen[k - 1] = true;
        mf.structure[k - 1] = to_polyform(ep.terms(rhs, rcol, true), mf.dim, 0, line).eval({});
        if (!mf.structure[k - 1].is_zero() && mf.structure[k - 1] != mf.structure[k - 1].degree_part(2))
          fail(ErrorKind::SyntaxError, line, rcol, "d " + arg + " must be a 2-form");
        continue;
      }
      if (key == "H" && arg.empty()) {
        if (h_seen)
          fail(ErrorKind::SyntaxError, line, col0, "H given twice");
        h_seen = true;
        mf.H = to_polyform(ep.terms(rhs, rcol, true), mf.dim, 0, line).eval({});
        if (mf.H != mf.H.degree_part(3))
          fail(ErrorKind::SyntaxError, line, rcol, "H must be a 3-form");
        continue;
      }
      fail(ErrorKind::SyntaxError, line, col0, "unknown header key '" + lhs + "'");
    }

    if (cur_struct) {
      ExprParser ep(line, mf.dim, no_vars);
      StructureBlock &b = *cur_struct;
      if (b.kind == "symplectic" && arg.empty() && (key == "omega" || key == "B")) {
        Form f = to_polyform(ep.terms(rhs, rcol, true), mf.dim, 0, line).eval({});
        if (f != f.degree_part(2))
          fail(ErrorKind::SyntaxError, line, rcol, key + " must be a 2-form");
        (key == "omega" ? b.omega : b.B) = f;
        continue;
      }
      bool is_I = b.kind == "complex" && key == "I", is_J = b.kind == "general" && key == "J";
      if ((is_I || is_J) && arg.size() >= 2 && all_digits(arg.substr(1)) &&
          (arg[0] == 'x' || (is_J && arg[0] == 'e'))) {
        int k = std::stoi(arg.substr(1));
        if (k < 1 || k > mf.dim)
          fail(ErrorKind::UnknownGenerator, line, col0 + 2, "no generator '" + arg + "'");
        int colidx = (arg[0] == 'x' ? 0 : mf.dim) + k - 1;
        if (image_seen[colidx])
          fail(ErrorKind::SyntaxError, line, col0, "image of " + arg + " given twice");
        image_seen[colidx] = true;
        auto img = to_gen(ep.terms(rhs, rcol, true), mf.dim, 0, line, is_J);
        for (int r = 0; r < (is_I ? mf.dim : 2 * mf.dim); ++r) {
          Scalar v = img[r].eval({});
          (is_I ? b.I : b.J)(r, colidx) = v;
        }
        continue;
      }
      fail(ErrorKind::SyntaxError, line, col0, "unexpected '" + lhs + "' in [" + b.kind + "]");
    }

    if (cur_gk) {
      if (key != "pair" || !arg.empty())
        fail(ErrorKind::SyntaxError, line, col0, "expected 'pair = first, second'");
      auto parts = split_list(rhs);
      if (parts.size() != 2 || !valid_name(parts[0]) || !valid_name(parts[1]))
        fail(ErrorKind::SyntaxError, line, rcol, "expected two block names");
      cur_gk->first = parts[0];
      cur_gk->second = parts[1];
      continue;
    }

    // family block
    PendingFamily &pf = pending.back();
    FamilySpec &f = pf.block.spec;
    if (key == "type" && arg.empty()) {
      std::string v = trim(rhs);
      if (!pf.type.empty())
        fail(ErrorKind::SyntaxError, line, col0, "type given twice");
      if (v == "symplectic")
        f.kind = FamilyKind::Symplectic;
      else if (v == "complex")
        f.kind = FamilyKind::Complex;
      else if (v == "general")
        f.kind = FamilyKind::General;
      else
        fail(ErrorKind::SyntaxError, line, rcol, "unknown family type '" + v + "'");
      pf.type = v;
      int size = f.kind == FamilyKind::General ? 2 * mf.dim : mf.dim;
      pf.columns.assign(size, std::vector<ParamPoly>(size, ParamPoly(f.m())));
      image_seen.assign(size, false);
      continue;
    }
    if (key == "params" && arg.empty()) {
      if (!f.vars.empty() || !pf.type.empty())
        fail(ErrorKind::SyntaxError, line, col0, "params must come first, once");
      for (const auto &v : split_list(rhs)) {
        bool ok = valid_name(v) && std::isalpha(static_cast<unsigned char>(v[0])) && v != "i" &&
                  !((v[0] == 'e' || v[0] == 'x') && v.size() > 1 &&
                    std::isdigit(static_cast<unsigned char>(v[1])));
        if (!ok || std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end())
          fail(ErrorKind::SyntaxError, line, rcol, "bad parameter name '" + v + "'");
        f.vars.push_back(v);
      }
      continue;
    }
    if (pf.type.empty())
      fail(ErrorKind::SyntaxError, line, col0, "family needs params and type first");
    ExprParser ep(line, mf.dim, f.vars);
    int m = f.m();
    if (key == "base" && arg.empty()) {
      f.basepoint = parse_values(rhs, m, line, rcol);
      continue;
    }
    if (key == "sample" && arg.empty()) {
      f.samples.push_back(parse_values(rhs, m, line, rcol));
      continue;
    }
    if (f.kind == FamilyKind::Symplectic && arg.empty() && (key == "omega" || key == "B")) {
      PolyForm p = to_polyform(ep.terms(rhs, rcol, true), mf.dim, m, line);
      for (const auto &[e, form] : p.terms())
        if (form != form.degree_part(2))
          fail(ErrorKind::SyntaxError, line, rcol, key + " must be a 2-form");
      if (key == "omega") {
        f.omega = p;
        pf.has_omega = true;
      } else {
        f.B = p;
      }
      continue;
    }
    bool is_I = f.kind == FamilyKind::Complex && key == "I";
    bool is_J = f.kind == FamilyKind::General && key == "J";
    if ((is_I || is_J) && arg.size() >= 2 && all_digits(arg.substr(1)) &&
        (arg[0] == 'x' || (is_J && arg[0] == 'e'))) {
      int k = std::stoi(arg.substr(1));
      if (k < 1 || k > mf.dim)
        fail(ErrorKind::UnknownGenerator, line, col0 + 2, "no generator '" + arg + "'");
      int colidx = (arg[0] == 'x' ? 0 : mf.dim) + k - 1;
      if (image_seen[colidx])
        fail(ErrorKind::SyntaxError, line, col0, "image of " + arg + " given twice");
      image_seen[colidx] = true;
      auto img = to_gen(ep.terms(rhs, rcol, true), mf.dim, m, line, is_J);
      img.resize(pf.columns.size(), ParamPoly(m));
      pf.columns[colidx] = img;
      continue;
    }
    fail(ErrorKind::SyntaxError, line, col0, "unexpected '" + lhs + "' in [family]");
  }
  if (mf.dim == 0)
    fail(ErrorKind::SyntaxError, line + 1, 1, "missing 'dim = ...'");
  finish_family();

  mf.model = std::make_shared<const LieModel>(mf.dim, mf.structure, mf.H);
  for (auto &pf : pending) {
    FamilySpec &f = pf.block.spec;
    f.model = mf.model;
    if (f.omega.dim() == 0)
      f.omega = PolyForm(mf.dim, f.m());
    if (f.B.dim() == 0)
      f.B = PolyForm(mf.dim, f.m());
    mf.families.push_back(pf.block);
  }
  for (const auto &b : mf.structures)
    if (b.kind == "symplectic" && b.omega.is_zero())
      fail(ErrorKind::SyntaxError, b.line, 1, "symplectic block without omega");
  for (const auto &g : mf.gks) {
    if (g.first.empty())
      fail(ErrorKind::SyntaxError, g.line, 1, "gk block without a pair");
    for (const auto &n : {g.first, g.second})
      if (!mf.find_structure(n) && !mf.find_family(n))
        fail(ErrorKind::SyntaxError, g.line, 1, "unknown block '" + n + "'");
  }
  return mf;
}

ModelFile load_model(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::SyntaxError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

namespace {

std::string symbol_name(bool vec, int k) {
  return (vec ? "x" : "e") + std::to_string(k + 1);
}

std::string blade_name(Blade mask) {
  std::string s;
  for (int k = 0; k < 32; ++k)
    if (mask & (Blade(1) << k))
      s += (s.empty() ? "" : "^") + symbol_name(false, k);
  return s;
}

// Joins (coefficient, symbol) pairs in canonical notation.
std::string join_terms(const std::vector<std::pair<ParamPoly, std::string>> &terms,
                       const std::vector<std::string> &vars) {
  std::string out;
  for (const auto &[p, sym] : terms) {
    if (p.is_zero())
      continue;
    std::string cs;
    bool neg = false;
    if (p.is_constant()) {
      Scalar c = p.terms().begin()->second;
      cs = c.str();
      bool compound = !c.is_real() && sgn(c.re) != 0;
      if (compound)
        cs = "(" + cs + ")";
      else if (cs[0] == '-') {
        neg = true;
        cs = cs.substr(1);
      }
    } else {
      cs = "(" + p.str(vars) + ")";
    }
    std::string piece;
    if (sym.empty())
      piece = cs;
    else if (cs == "1")
      piece = sym;
    else
      piece = cs + " " + sym;
    if (out.empty())
      out = (neg ? "-" : "") + piece;
    else
      out += (neg ? " - " : " + ") + piece;
  }
  return out.empty() ? "0" : out;
}

std::string emit_polyform(const PolyForm &f, const std::vector<std::string> &vars) {
  std::set<Blade> masks;
  for (const auto &[e, form] : f.terms())
    for (const auto &[mask, c] : form.terms())
      masks.insert(mask);
  std::vector<Blade> order(masks.begin(), masks.end());
  std::stable_sort(order.begin(), order.end(), [](Blade a, Blade b) {
    int da = blade_degree(a), db = blade_degree(b);
    return da != db ? da < db : a < b;
  });
  std::vector<std::pair<ParamPoly, std::string>> terms;
  for (Blade mask : order)
    terms.emplace_back(f.coeff(mask), blade_name(mask));
  return join_terms(terms, vars);
}

std::string emit_form(const Form &f) {
  return emit_polyform(PolyForm::constant(0, f), {});
}

std::string emit_image(const std::vector<ParamPoly> &coords, int dim,
                       const std::vector<std::string> &vars) {
  std::vector<std::pair<ParamPoly, std::string>> terms;
  for (std::size_t r = 0; r < coords.size(); ++r)
    terms.emplace_back(coords[r], symbol_name(int(r) < dim, int(r) % dim));
  return join_terms(terms, vars);
}

std::string emit_values(const Vec &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + v[i].str();
  return s;
}

} // namespace

std::string emit_model(const ModelFile &m) {
  std::ostringstream os;
  os << "dim = " << m.dim << "\n";
  for (int k = 0; k < m.dim; ++k)
    if (!m.structure[k].is_zero())
      os << "d e" << k + 1 << " = " << emit_form(m.structure[k]) << "\n";
  os << "H = " << emit_form(m.H) << "\n";
  int dim = m.dim;
  auto emit_matrix = [&](const char *key, const std::vector<std::vector<ParamPoly>> &cols,
                         const std::vector<std::string> &vars) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      bool any = std::any_of(cols[c].begin(), cols[c].end(),
                             [](const ParamPoly &p) { return !p.is_zero(); });
      if (any)
        os << key << " " << symbol_name(int(c) < dim, int(c) % dim) << " = "
           << emit_image(cols[c], dim, vars) << "\n";
    }
  };
  auto const_cols = [&](const Mat &M) {
    std::vector<std::vector<ParamPoly>> cols(M.cols());
    for (int c = 0; c < M.cols(); ++c)
      for (int r = 0; r < M.rows(); ++r)
        cols[c].push_back(ParamPoly::constant(0, M(r, c)));
    return cols;
  };
  for (const auto &b : m.structures) {
    os << "\n[" << b.kind << " " << b.name << "]\n";
    if (b.kind == "symplectic") {
      os << "omega = " << emit_form(b.omega) << "\n";
      os << "B = " << emit_form(b.B) << "\n";
    } else {
      emit_matrix(b.kind == "complex" ? "I" : "J", const_cols(b.kind == "complex" ? b.I : b.J), {});
    }
  }
  for (const auto &fb : m.families) {
    const FamilySpec &f = fb.spec;
    os << "\n[family " << fb.name << "]\n";
    os << "params = ";
    for (std::size_t i = 0; i < f.vars.size(); ++i)
      os << (i ? ", " : "") << f.vars[i];
    os << "\ntype = " << to_string(f.kind) << "\n";
    if (f.kind == FamilyKind::Symplectic) {
      os << "omega = " << emit_polyform(f.omega, f.vars) << "\n";
      os << "B = " << emit_polyform(f.B, f.vars) << "\n";
    } else {
      int size = f.kind == FamilyKind::Complex ? dim : 2 * dim;
      std::vector<std::vector<ParamPoly>> cols(size);
      for (int c = 0; c < size; ++c)
        for (int r = 0; r < size; ++r)
          cols[c].push_back(f.entries[std::size_t(r) * size + c]);
      emit_matrix(f.kind == FamilyKind::Complex ? "I" : "J", cols, f.vars);
    }
    os << "base = " << emit_values(f.basepoint) << "\n";
    for (const auto &s : f.samples)
      os << "sample = " << emit_values(s) << "\n";
  }
  for (const auto &g : m.gks)
    os << "\n[gk " << g.name << "]\npair = " << g.first << ", " << g.second << "\n";
  return os.str();
}

GCSPtr build_structure(const ModelFile &m, const StructureBlock &b) {
  if (b.kind == "symplectic")
    return make_symplectic(m.model, b.omega, b.B);
  if (b.kind == "complex")
    return make_complex(m.model, b.I);
  return make_general(m.model, b.J);
}

Vec parse_point(const std::string &text, const std::vector<std::string> &vars) {
  Vec out(vars.size());
  std::vector<bool> seen(vars.size(), false);
  for (const auto &part : split_list(text)) {
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::SyntaxError, "expected name=value in '" + part + "'");
    std::string name = trim(part.substr(0, eq));
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end())
      throw Error(ErrorKind::UnknownGenerator, "no parameter '" + name + "'");
    Scalar c;
    if (!parse_scalar(trim(part.substr(eq + 1)), c))
      throw Error(ErrorKind::SyntaxError, "bad value in '" + part + "'");
    out[it - vars.begin()] = c;
    seen[it - vars.begin()] = true;
  }
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (!seen[i])
      throw Error(ErrorKind::SyntaxError, "missing value for '" + vars[i] + "'");
  return out;
}

} // namespace gcm
