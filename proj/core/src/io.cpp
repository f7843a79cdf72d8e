#include <divfree/io.hpp>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace divfree {

namespace {

using json = nlohmann::ordered_json;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

// Runs a parse body, converting library exceptions into ParseError so every
// malformed input surfaces uniformly.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

Scalar scalar_from_node(const json& node) {
  if (node.is_string()) return Scalar::from_string(node.get<std::string>());
  if (node.is_number_integer()) return Scalar(node.get<std::int64_t>());
  throw ParseError("scalar must be a \"p/q\" string or an integer");
}

json grade_node(const GroupElement& g) { return json(g.coords()); }

GroupElement grade_from_node(const json& node) {
  return GroupElement(node.get<std::vector<std::int64_t>>());
}

json scalar_vector_node(const std::vector<Scalar>& coords) {
  json arr = json::array();
  for (const Scalar& c : coords) arr.push_back(c.to_string());
  return arr;
}

std::vector<Scalar> scalar_vector_from_node(const json& node) {
  if (!node.is_array()) throw ParseError("expected an array of scalars");
  std::vector<Scalar> out;
  out.reserve(node.size());
  for (const json& cell : node) out.push_back(scalar_from_node(cell));
  return out;
}

}  // namespace

std::string to_json(const GroupElement& g) { return grade_node(g).dump(2); }

std::string to_json(const WittElement& u) {
  json arr = json::array();
  for (const auto& [grade, dvec] : u.terms()) {
    json term;
    term["grade"] = grade_node(grade);
    term["dvec"] = scalar_vector_node(dvec.coords());
    arr.push_back(std::move(term));
  }
  return arr.dump(2);
}

std::string to_json(const GroupAlgebraElement& f) {
  json arr = json::array();
  for (const auto& [grade, coeff] : f.terms()) {
    json term;
    term["grade"] = grade_node(grade);
    term["coeff"] = coeff.to_string();
    arr.push_back(std::move(term));
  }
  return arr.dump(2);
}

std::string to_json(const ModuleSpec& spec) {
  json j;
  j["family"] = family_name(spec.family());
  j["rank"] = spec.rank();
  switch (spec.family()) {
    case Family::Trivial:
      break;
    case Family::M:
      j["mu"] = scalar_vector_node(spec.mu().coords());
      break;
    case Family::A:
    case Family::B:
      j["zeta"] = grade_node(spec.zeta());
      j["eta"] = scalar_vector_node(spec.eta().coords());
      if (spec.eta().is_zero()) j["allow_zero_eta"] = true;
      break;
  }
  return j.dump(2);
}

std::string to_json(const ModuleVector& v) {
  json arr = json::array();
  for (const auto& [grade, coeff] : v.terms()) {
    json term;
    term["grade"] = grade_node(grade);
    term["coeff"] = coeff.to_string();
    arr.push_back(std::move(term));
  }
  return arr.dump(2);
}

std::string to_json(const ActionTable& t) {
  json j;
  j["rank"] = t.rank();
  j["radius"] = t.radius();
  json entries = json::array();
  for (const auto& [key, coeff] : t.entries()) {
    json e;
    e["gen"] = key.first;
    e["beta"] = grade_node(key.second);
    e["coeff"] = coeff.to_string();
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j.dump(2);
}

std::string to_json(const AxiomReport& r) {
  json j;
  j["checks"] = r.checks;
  j["failures"] = r.failures;
  j["ok"] = r.ok();
  j["first_counterexample"] = r.first_counterexample;
  return j.dump(2);
}

std::string to_json(const SpanCheckReport& r) {
  json j;
  j["radius"] = r.radius;
  j["depth"] = r.depth;
  j["grades_checked"] = r.grades_checked;
  j["all_ok"] = r.all_ok();
  json rows = json::array();
  for (const SpanCheckRow& row : r.shortfalls) {
    json e;
    e["grade"] = grade_node(row.grade);
    e["achieved"] = row.achieved;
    e["expected"] = row.expected;
    rows.push_back(std::move(e));
  }
  j["shortfalls"] = std::move(rows);
  return j.dump(2);
}

namespace {

json certificate_node(const IntertwinerCertificate& c) {
  json j;
  j["kind"] = c.kind == IntertwinerCertificate::Kind::ZeroMismatch ? "ZeroMismatch"
                                                                   : "InconsistentCycle";
  j["shift"] = grade_node(c.shift);
  if (c.kind == IntertwinerCertificate::Kind::ZeroMismatch) {
    j["source"] = grade_node(c.source);
    j["generator"] = c.generator;
    j["domain_coefficient"] = c.domain_coefficient.to_string();
    j["codomain_coefficient"] = c.codomain_coefficient.to_string();
  } else {
    json cycle = json::array();
    for (const auto& step : c.cycle) {
      json s;
      s["from"] = grade_node(step.from);
      s["to"] = grade_node(step.to);
      s["ratio"] = step.ratio.to_string();
      cycle.push_back(std::move(s));
    }
    j["cycle"] = std::move(cycle);
    j["cycle_product"] = c.cycle_product.to_string();
  }
  return j;
}

}  // namespace

std::string to_json(const IntertwinerResult& r) {
  json j;
  j["outcome"] = intertwiner_outcome_name(r.outcome);
  j["window_radius"] = r.window_radius;
  if (r.outcome == IntertwinerOutcome::Found) {
    j["shift"] = grade_node(r.shift);
    j["free_scalars"] = r.free_scalars;
    json scalars = json::array();
    for (const auto& [grade, coeff] : r.scalars) {
      json s;
      s["grade"] = grade_node(grade);
      s["coeff"] = coeff.to_string();
      scalars.push_back(std::move(s));
    }
    j["scalars"] = std::move(scalars);
  }
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(certificate_node(c));
  j["certificates"] = std::move(certs);
  return j.dump(2);
}

std::string to_json(const FitResult& r) {
  json j;
  j["verdict"] = fit_kind_name(r.verdict);
  // The spec is the fitted parameterization; on NoFit it is a placeholder.
  j["spec"] = parse_text(to_json(r.spec));
  json res = json::array();
  for (const TableResidual& t : r.residuals) {
    json e;
    e["gen"] = t.gen;
    e["beta"] = grade_node(t.grade);
    e["table"] = t.table_value.to_string();
    e["fitted"] = t.fitted_value.to_string();
    res.push_back(std::move(e));
  }
  j["residuals"] = std::move(res);
  return j.dump(2);
}

GroupElement group_element_from_json(const std::string& text) {
  return guarded("group element", [&] { return grade_from_node(parse_text(text)); });
}

WittElement witt_from_json(const std::string& text) {
  return guarded("witt element", [&] {
    const json j = parse_text(text);
    if (!j.is_array()) throw ParseError("witt element: expected a top-level array of terms");
    WittElement u;
    for (const json& term : j) {
      GroupElement grade = grade_from_node(term.at("grade"));
      DVector dvec{scalar_vector_from_node(term.at("dvec"))};
      if (grade.rank() != dvec.rank()) {
        throw DimensionError("witt element: term grade and dvec ranks differ");
      }
      u += WittElement::term(std::move(grade), std::move(dvec));
    }
    return u;
  });
}

GroupAlgebraElement group_algebra_from_json(const std::string& text) {
  return guarded("group algebra element", [&] {
    const json j = parse_text(text);
    if (!j.is_array()) {
      throw ParseError("group algebra element: expected a top-level array of terms");
    }
    GroupAlgebraElement f;
    for (const json& term : j) {
      f += GroupAlgebraElement::term(grade_from_node(term.at("grade")),
                                     scalar_from_node(term.at("coeff")));
    }
    return f;
  });
}

ModuleSpec module_spec_from_json(const std::string& text) {
  return guarded("module spec", [&] {
    const json j = parse_text(text);
    const std::string family = j.at("family").get<std::string>();
    const std::size_t rank = j.at("rank").get<std::size_t>();
    if (family == "trivial") return ModuleSpec::trivial(rank);
    if (family == "M") {
      const Functional mu{scalar_vector_from_node(j.at("mu"))};
      if (mu.rank() != rank) throw DimensionError("module spec: mu rank mismatch");
      return ModuleSpec::family_m(mu);
    }
    if (family == "A" || family == "B") {
      const GroupElement zeta = grade_from_node(j.at("zeta"));
      const Functional eta{scalar_vector_from_node(j.at("eta"))};
      if (zeta.rank() != rank || eta.rank() != rank) {
        throw DimensionError("module spec: zeta or eta rank mismatch");
      }
      const bool allow_zero = j.value("allow_zero_eta", false);
      return family == "A" ? ModuleSpec::family_a(zeta, eta, allow_zero)
                           : ModuleSpec::family_b(zeta, eta, allow_zero);
    }
    throw ParseError("module spec: unknown family \"" + family + "\"");
  });
}

ModuleVector module_vector_from_json(const std::string& text) {
  return guarded("module vector", [&] {
    const json j = parse_text(text);
    if (!j.is_array()) throw ParseError("module vector: expected a top-level array of terms");
    ModuleVector v;
    for (const json& term : j) {
      v.add_term(grade_from_node(term.at("grade")), scalar_from_node(term.at("coeff")));
    }
    return v;
  });
}

ActionTable action_table_from_json(const std::string& text) {
  return guarded("action table", [&] {
    const json j = parse_text(text);
    ActionTable t(j.at("rank").get<std::size_t>(), j.at("radius").get<int>());
    for (const json& e : j.at("entries")) {
      t.set(e.at("gen").get<std::size_t>(), grade_from_node(e.at("beta")),
            scalar_from_node(e.at("coeff")));
    }
    return t;
  });
}

GroupElement grade_from_csv(const std::string& text) {
  std::vector<std::int64_t> coords;
  std::string cell;
  std::istringstream in(text);
  while (std::getline(in, cell, ',')) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stoll(cell, &used));
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("grade: expected comma-separated integers, got \"" + text + "\"");
    }
  }
  if (coords.empty()) throw ParseError("grade: empty coordinate list");
  return GroupElement(std::move(coords));
}

std::string to_json(const Config& c) {
  json j;
  j["rank"] = c.rank;
  json rows = json::array();
  for (const auto& row : c.pairing.rows()) rows.push_back(scalar_vector_node(row));
  j["pairing"] = std::move(rows);
  j["default_radius"] = c.default_radius;
  j["output"] = c.output;
  return j.dump(2);
}

Config config_from_json(const std::string& text) {
  return guarded("config", [&] {
    const json j = parse_text(text);
    Config c;
    c.rank = j.value("rank", std::size_t{3});
    if (c.rank < 2) throw DomainError("config: rank must be at least 2");
    if (j.contains("pairing")) {
      std::vector<std::vector<Scalar>> rows;
      for (const json& row : j.at("pairing")) rows.push_back(scalar_vector_from_node(row));
      if (rows.size() != c.rank) throw DimensionError("config: pairing must be rank x rank");
      for (const auto& row : rows) {
        if (row.size() != c.rank) throw DimensionError("config: pairing must be rank x rank");
      }
      c.pairing = Pairing(std::move(rows));
    } else {
      c.pairing = Pairing::identity(c.rank);
    }
    c.default_radius = j.value("default_radius", 2);
    if (c.default_radius < 1) throw DomainError("config: default_radius must be at least 1");
    c.output = j.value("output", std::string{});
    return c;
  });
}

Config load_config(const std::optional<std::string>& explicit_path) {
  std::string path;
  if (explicit_path) {
    path = *explicit_path;
  } else if (const char* env = std::getenv("DIVFREE_CONFIG")) {
    path = env;
  } else if (std::filesystem::exists("divfree.json")) {
    path = "divfree.json";
  } else {
    return Config{};
  }
  return config_from_json(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return std::move(out).str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::string export_structure_constants_json(const Space& W, int radius) {
  const StructureConstants sc = structure_constants(W, radius);
  json j;
  j["radius"] = sc.radius;
  json basis = json::array();
  for (const SBasisElement& e : sc.basis) {
    json b;
    b["grade"] = grade_node(e.grade);
    b["direction"] = scalar_vector_node(e.direction.coords());
    basis.push_back(std::move(b));
  }
  j["basis"] = std::move(basis);
  json entries = json::array();
  for (const auto& e : sc.entries) {
    json row;
    row["i"] = e.i;
    row["j"] = e.j;
    row["k"] = e.k;
    row["c"] = e.c.to_string();
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j.dump(2);
}

std::string export_structure_constants_csv(const Space& W, int radius) {
  const StructureConstants sc = structure_constants(W, radius);
  std::string out = "i,j,k,c\n";
  for (const auto& e : sc.entries) {
    out += std::to_string(e.i);
    out += ',';
    out += std::to_string(e.j);
    out += ',';
    out += std::to_string(e.k);
    out += ',';
    out += e.c.to_string();
    out += '\n';
  }
  return out;
}

}  // namespace divfree
