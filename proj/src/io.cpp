#include "turrittin/io.hpp"

#include <algorithm>

namespace turrittin {

namespace {

Error parse_error(const std::string& what) { return Error(ErrorCode::ParseError, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw parse_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string string_member(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_string()) throw parse_error(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

long long_of(const Json& v, const std::string& what) {
  if (!v.is_string()) throw parse_error(what + " must be a decimal string");
  const std::string s = v.get<std::string>();
  try {
    size_t used = 0;
    long x = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw parse_error(what + " is not an integer: \"" + s + "\"");
  }
}

void check_format(const Json& j, const char* kind) {
  if (!j.is_object()) throw parse_error("document must be a JSON object");
  if (!j.contains("format") || j.at("format") != 1) throw parse_error("unsupported or missing \"format\" (expected 1)");
  if (string_member(j, "kind") != kind)
    throw parse_error(std::string("expected a document of kind \"") + kind + "\"");
}

FieldDescriptor field_of(const Json& j) {
  std::string name = string_member(j, "field");
  try {
    return FieldDescriptor::parse(name);
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidFieldDescriptor, "unknown field \"" + name + "\"");
  }
}

Scalar scalar_of(const Json& v, const FieldDescriptor& f) {
  if (!v.is_string()) throw parse_error("matrix entries must be strings");
  Scalar s = parse_scalar(v.get<std::string>());
  if (!contains(f, s.field()))
    throw Error(ErrorCode::InvalidFieldDescriptor, "\"" + v.get<std::string>() + "\" lies outside " + f.name());
  return s.coerce(f);
}

}  // namespace

std::string exact_text(const Jet& j) { return Jet(j.is_zero() ? 0 : j.valuation(), j.coeffs()).str(); }

Json system_to_json(const System& a, const Metadata& meta) {
  Json j;
  j["format"] = 1;
  j["kind"] = "system";
  j["field"] = a.field().name();
  j["n"] = std::to_string(a.n());
  j["truncation_order"] = a.is_exact() ? std::string("exact") : std::to_string(a.rel_order());
  Json rows = Json::array();
  for (int r = 0; r < a.n(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < a.n(); ++c) row.push_back(exact_text(a.entry(r, c)));
    rows.push_back(row);
  }
  j["entries"] = rows;
  Json m = Json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  j["metadata"] = m;
  return j;
}

System system_from_json(const Json& j, Metadata* meta) {
  check_format(j, "system");
  FieldDescriptor f = field_of(j);
  long n = long_of(member(j, "n"), "n");
  if (n < 1) throw parse_error("n must be positive");
  const Json& rows = member(j, "entries");
  if (!rows.is_array() || static_cast<long>(rows.size()) != n) throw parse_error("entries must hold n rows");
  std::vector<std::vector<Jet>> e(static_cast<size_t>(n));
  long nu = kInfValuation;
  for (long r = 0; r < n; ++r) {
    const Json& row = rows[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<long>(row.size()) != n) throw parse_error("row " + std::to_string(r + 1) + " must hold n entries");
    for (long c = 0; c < n; ++c) {
      const Json& v = row[static_cast<size_t>(c)];
      std::string where = "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
      if (!v.is_string()) throw parse_error(where + " must be a string");
      Jet x;
      try {
        x = parse_jet(v.get<std::string>());
      } catch (const Error& err) {
        throw parse_error(where + ": " + err.what());
      }
      if (!contains(f, x.field()))
        throw Error(ErrorCode::InvalidFieldDescriptor, where + " lies outside " + f.name());
      if (!x.is_zero()) nu = std::min(nu, x.valuation());
      e[static_cast<size_t>(r)].push_back(x);
    }
  }
  if (nu == kInfValuation) nu = 0;
  std::string t = string_member(j, "truncation_order");
  long order = kExact;
  if (t != "exact") {
    long rel = long_of(member(j, "truncation_order"), "truncation_order");
    if (rel < 0) throw parse_error("truncation_order must be nonnegative");
    order = nu + rel;
  }
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) {
      Jet& x = e[static_cast<size_t>(r)][static_cast<size_t>(c)];
      if (!x.is_zero() && x.last_degree() > order)
        throw parse_error("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") has a coefficient of degree " +
                          std::to_string(x.last_degree()) + " past the declared truncation");
      std::vector<Scalar> cs;
      for (const auto& s : x.coeffs()) cs.push_back(s.coerce(f));
      x = Jet(x.is_zero() ? 0 : x.valuation(), cs, std::min(order, x.order()));
    }
  if (meta) {
    meta->clear();
    if (j.contains("metadata")) {
      if (!j.at("metadata").is_object()) throw parse_error("metadata must be an object");
      for (const auto& [k, v] : j.at("metadata").items()) (*meta)[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  return System::from_entries(e);
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw parse_error("matrix must hold n rows");
  std::vector<std::vector<Scalar>> rows;
  FieldDescriptor f;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw parse_error("matrix rows must hold n entries");
    std::vector<Scalar> v;
    for (const auto& x : row) {
      if (!x.is_string()) throw parse_error("matrix entries must be strings");
      v.push_back(parse_scalar(x.get<std::string>()));
      f = join(f, v.back().field());
    }
    rows.push_back(v);
  }
  for (auto& row : rows)
    for (auto& x : row) x = x.coerce(f);
  return Matrix::from_rows(rows);
}

Json chain_to_json(const Chain& c, int n) {
  Json j;
  j["format"] = 1;
  j["kind"] = "chain";
  j["n"] = std::to_string(n);
  FieldDescriptor f;
  for (const auto& s : c.steps)
    for (const auto& m : s.poly) f = join(f, m.field());
  j["field"] = f.name();
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json x;
    x["kind"] = step_kind_name(s.kind);
    switch (s.kind) {
      case StepKind::ConstantRegular:
      case StepKind::RegularPolynomial: {
        Json cs = Json::array();
        for (const auto& m : s.poly) cs.push_back(matrix_to_json(m));
        x["coefficients"] = cs;
        break;
      }
      case StepKind::DiagonalMonomial: {
        Json e = Json::array();
        for (long v : s.exponents) e.push_back(std::to_string(v));
        x["exponents"] = e;
        break;
      }
      case StepKind::Ramification: x["r"] = std::to_string(s.r); break;
    }
    steps.push_back(x);
  }
  j["steps"] = steps;
  return j;
}

Chain chain_from_json(const Json& j) {
  check_format(j, "chain");
  FieldDescriptor f = field_of(j);
  long n = long_of(member(j, "n"), "n");
  if (n < 1) throw parse_error("n must be positive");
  const Json& steps = member(j, "steps");
  if (!steps.is_array()) throw parse_error("steps must be an array");
  Chain c;
  for (const auto& x : steps) {
    std::string kind = string_member(x, "kind");
    Step s;
    if (kind == step_kind_name(StepKind::ConstantRegular) || kind == step_kind_name(StepKind::RegularPolynomial)) {
      const Json& cs = member(x, "coefficients");
      if (!cs.is_array() || cs.empty()) throw parse_error("gauge step needs coefficients");
      std::vector<Matrix> p;
      for (const auto& m : cs) {
        Matrix a(static_cast<int>(n), static_cast<int>(n));
        if (!m.is_array() || static_cast<long>(m.size()) != n) throw parse_error("matrix must hold n rows");
        for (long r = 0; r < n; ++r) {
          const Json& row = m[static_cast<size_t>(r)];
          if (!row.is_array() || static_cast<long>(row.size()) != n) throw parse_error("matrix rows must hold n entries");
          for (long col = 0; col < n; ++col) a(static_cast<int>(r), static_cast<int>(col)) = scalar_of(row[static_cast<size_t>(col)], f);
        }
        p.push_back(a);
      }
      s = kind == step_kind_name(StepKind::ConstantRegular) ? Step::constant(p[0]) : Step::polynomial(p);
      if (kind == step_kind_name(StepKind::ConstantRegular) && p.size() != 1) throw parse_error("constant step needs one coefficient");
    } else if (kind == step_kind_name(StepKind::DiagonalMonomial)) {
      const Json& e = member(x, "exponents");
      if (!e.is_array() || static_cast<long>(e.size()) != n) throw parse_error("monomial step needs n exponents");
      std::vector<long> v;
      for (const auto& y : e) v.push_back(long_of(y, "exponent"));
      s = Step::monomial(v);
    } else if (kind == step_kind_name(StepKind::Ramification)) {
      long r = long_of(member(x, "r"), "r");
      if (r < 1) throw parse_error("ramification index must be positive");
      s = Step::ramification(r);
    } else {
      throw parse_error("unknown step kind \"" + kind + "\"");
    }
    c.steps.push_back(s);  // kept verbatim, identity steps included
  }
  return c;
}

Json normal_form_to_json(const NormalForm& nf) {
  Json j;
  j["format"] = 1;
  j["kind"] = "normal_form";
  FieldDescriptor f = nf.C.field();
  for (const auto& m : nf.D) f = join(f, m.field());
  j["field"] = f.name();
  j["n"] = std::to_string(nf.n);
  j["q"] = std::to_string(nf.q);
  j["mu"] = std::to_string(nf.mu);
  j["r"] = std::to_string(nf.r);
  Json d = Json::array();
  for (const auto& m : nf.D) d.push_back(matrix_to_json(m));
  j["D"] = d;
  j["C"] = matrix_to_json(nf.C);
  Json blocks = Json::array();
  for (const auto& b : nf.blocks) {
    Json x = Json::array();
    for (int i : b) x.push_back(std::to_string(i + 1));
    blocks.push_back(x);
  }
  j["blocks"] = blocks;
  if (nf.real_size >= 0) j["real_size"] = std::to_string(nf.real_size);
  return j;
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw parse_error("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

System parse_system(const std::string& text, Metadata* meta) { return system_from_json(parse_document(text), meta); }
std::string render_system(const System& a, const Metadata& meta) { return render_json(system_to_json(a, meta)); }
Chain parse_chain(const std::string& text) { return chain_from_json(parse_document(text)); }
std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace turrittin
