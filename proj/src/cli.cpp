#include "gkz/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gkz/curve.hpp"
#include "gkz/exponents.hpp"
#include "gkz/irregularity.hpp"
#include "gkz/restriction.hpp"
#include "gkz/series.hpp"
#include "gkz/weyl.hpp"

namespace gkz::cli {

using nlohmann::json;

namespace {

// Flag values that fail to parse are flag errors (exit 2), unlike domain errors.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CurveMatrix parse_matrix(const std::string& text) {
  IntVector entries;
  std::stringstream in(text);
  std::string item;
  try {
    while (std::getline(in, item, ',')) entries.push_back(to_int64(parse_rational(item)));
  } catch (const Error&) {
    throw FlagError("--matrix expects comma-separated integers, got '" + text + "'");
  }
  return make_curve(entries);
}

Rational parse_flag_rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw FlagError(flag + " expects a rational such as 1/2, got '" + text + "'");
  }
}

GevreyOrder parse_order(const std::string& text) {
  if (text == "inf" || text == "infinity") return GevreyOrder::infinity();
  return GevreyOrder::of(parse_flag_rational("--s", text));
}

PointClass parse_point(const std::string& text) {
  if (text == "generic") return PointClass::GenericPoint;
  if (text == "smooth") return PointClass::SmoothStratum;
  if (text == "deep") return PointClass::DeepStratum;
  throw FlagError("--point expects generic, smooth or deep");
}

// Integers print as JSON numbers, other rationals as "p/q" strings.
json number(const Rational& q) {
  if (is_integer(q) && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

json vector_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(number(x));
  return out;
}

json descriptor_json(const ModuleDescriptor& d) {
  return {{"matrix", d.matrix.entries()}, {"parameter", to_string(d.parameter)},
          {"caveat", to_string(d.caveat)}};
}

json dimension_json(const DimensionAnswer& d) {
  return d.covered() ? json(*d.value) : json("not covered");
}

// Plain-text rendering: scalars as "key: value", arrays of scalars inline,
// nested structures indented.
void render_table(const json& j, std::ostream& out, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [&](const json& v) {
    if (!v.is_array()) return false;
    return std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); });
  };
  auto inline_array = [&](const json& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : "  ") + scalar(x);
    return s;
  };
  if (j.is_object()) {
    std::size_t width = 0;
    for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
    for (auto it = j.begin(); it != j.end(); ++it) {
      out << pad << std::left << std::setw(static_cast<int>(width)) << it.key() << " : ";
      if (it->is_primitive()) out << scalar(*it) << "\n";
      else if (flat(*it)) out << inline_array(*it) << "\n";
      else {
        out << "\n";
        render_table(*it, out, indent + 2);
      }
    }
  } else if (j.is_array()) {
    if (std::all_of(j.begin(), j.end(), [&](const json& r) { return flat(r); })) {
      std::vector<std::size_t> widths;
      for (const auto& r : j)
        for (std::size_t c = 0; c < r.size(); ++c) {
          if (widths.size() <= c) widths.push_back(0);
          widths[c] = std::max(widths[c], scalar(r[c]).size());
        }
      for (const auto& r : j) {
        out << pad;
        for (std::size_t c = 0; c < r.size(); ++c)
          out << std::right << std::setw(static_cast<int>(widths[c])) << scalar(r[c]) << (c + 1 < r.size() ? "  " : "");
        out << "\n";
      }
    } else {
      for (const auto& r : j) {
        if (r.is_primitive()) out << pad << scalar(r) << "\n";
        else {
          render_table(r, out, indent);
          out << pad << "--\n";
        }
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

struct Verdict {
  json report;
  Rational violation;
};

// Checks one series. Ordinary series must be annihilated by the toric
// generators, the Euler operator and the box operators up to the radius. The
// modified series must be annihilated by everything except P_{n-1}, where the
// image must equal the closed form.
Verdict verify_series(const CurveMatrix& a, const Rational& beta, const FormalSeries& s, bool modified,
                      std::int64_t radius) {
  if (s.descriptor() == "opaque")
    throw Error(ErrorCode::Parse, "series has no reconstructible window (descriptor 'opaque')");
  if (s.variables() != a.size()) throw Error(ErrorCode::DimensionMismatch, "series does not match the matrix");
  const Rational param = s.parameter.value_or(beta);
  Verdict v;
  v.violation = 0;
  if (modified && !a.smooth()) {
    // P_{n-1} and its closed form live on the auxiliary matrix; after the
    // substitution there is no generator list to compare against.
    v.report = {{"unchecked", true}, {"max_violation", "0"}, {"checked", 0}};
    return v;
  }
  json gens = json::array();
  std::size_t checked = 0;

  std::vector<WeylOperator> ops;
  if (modified) {
    WeylOperator pn1 = p_n1_operator(a);
    for (auto& g : toric_generators_smooth(a))
      if (!(g == pn1)) ops.push_back(g);
    ops.push_back(euler_operator(a, param));
  } else {
    ops = hypergeometric_generators(a, param, radius);
  }
  AnnihilationReport rep = annihilation_report(ops, s);
  for (const auto& g : rep.per_generator) {
    gens.push_back({{"operator", g.op}, {"max_violation", to_string(g.max_violation)},
                    {"checked", g.checked}, {"skipped", g.skipped}});
    checked += g.checked;
  }
  v.violation = rep.max_violation;

  json out = {{"generators", gens}};
  if (modified) {
    FormalSeries image = apply(p_n1_operator(a), s);
    FormalSeries closed = p_n1_closed_form(a, param);
    Rational residual = 0;
    std::size_t compared = 0;
    for (const auto& [u, c] : image.terms)
      if (image.trusted(u)) {
        residual = std::max<Rational>(residual, abs(c - closed.coefficient(u)));
        ++compared;
      }
    for (const auto& [u, c] : closed.terms) {
      if (!image.trusted(u)) residual = std::max<Rational>(residual, abs(c));
      else if (!image.terms.count(u)) residual = std::max<Rational>(residual, abs(c));
    }
    out["p_n1_residual"] = to_string(residual);
    out["p_n1_terms"] = closed.terms.size();
    checked += compared;
    v.violation = std::max(v.violation, residual);
  }
  out["checked"] = checked;
  out["max_violation"] = to_string(v.violation);
  v.report = std::move(out);
  return v;
}

json basis_json(const SolutionBasis& b) {
  json out;
  out["sheaf"] = to_string(b.sheaf);
  out["parameter"] = to_string(b.parameter);
  if (b.contiguity) out["contiguity"] = *b.contiguity;
  json items = json::array();
  for (const auto& e : b.elements) {
    json s = to_json(e.series);
    items.push_back({{"label", e.label}, {"modified", e.modified}, {"series", s}});
  }
  out["basis"] = items;
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for hypergeometric systems of affine monomial curves", "gkz-cli"};
  app.require_subcommand(1);

  std::string matrix_text, beta_text = "0", s_text = "inf", point_text = "smooth", format = "json";
  std::string series_file, which = "tilde", kind, weight = "first", beta_special, beta_generic, csv_file;
  std::int64_t truncation = 12, radius = 3, terms = 200, column = 2;
  int ext_degree = -1;

  auto common = [&](CLI::App* c, bool beta) {
    c->add_option("--matrix", matrix_text, "entries a_1,...,a_n")->required();
    if (beta) c->add_option("--beta", beta_text, "parameter, e.g. 1/2");
    c->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  };

  auto* exponents = app.add_subcommand("exponents", "singular or generic exponents");
  common(exponents, true);
  exponents->add_option("--point", point_text, "smooth (singular exponents) or generic");

  auto* solve = app.add_subcommand("solve", "solution basis as series");
  common(solve, true);
  solve->add_option("--truncation", truncation, "lattice level N")->check(CLI::NonNegativeNumber);
  solve->add_option("--s", s_text, "Gevrey order or inf");
  solve->add_option("--point", point_text, "generic, smooth or deep");

  auto* verify = app.add_subcommand("verify", "check annihilation on the trusted window");
  common(verify, true);
  verify->add_option("--truncation", truncation, "lattice level N")->check(CLI::NonNegativeNumber);
  verify->add_option("--radius", radius, "lattice ball radius for box operators")->check(CLI::PositiveNumber);
  verify->add_option("--series", series_file, "JSON file from solve, or a single series");
  verify->add_option("--s", s_text, "Gevrey order or inf");
  verify->add_option("--point", point_text, "generic, smooth or deep");

  auto* gevrey = app.add_subcommand("gevrey-index", "estimate the Gevrey index of a designated subseries");
  common(gevrey, true);
  gevrey->add_option("--which", which, "tilde, j=<k>, factorial or inverse-factorial");
  gevrey->add_option("--terms", terms, "number of exact coefficients")->check(CLI::PositiveNumber);
  gevrey->add_option("--csv", csv_file, "write k, log|c_k| to this file");

  auto* table = app.add_subcommand("irregularity-table", "dimensions of the irregularity complex");
  common(table, true);
  table->add_option("--s", s_text, "Gevrey order or inf");
  table->add_option("--point", point_text, "restrict to one point class");
  table->add_option("--ext-degree", ext_degree, "restrict to one Ext degree")->check(CLI::NonNegativeNumber);

  auto* figure = app.add_subcommand("figure1", "reproduce the dimension table and compare");
  common(figure, false);
  figure->add_option("--beta-special", beta_special, "natural parameter")->required();
  figure->add_option("--beta-generic", beta_generic, "non-natural parameter")->required();
  figure->add_option("--s", s_text, "Gevrey order, at least the slope")->required();

  auto* restrict = app.add_subcommand("restrict", "restriction decompositions");
  common(restrict, true);
  restrict->add_option("--kind", kind, "hyperplane, x1-split, plane or aux")
      ->required()
      ->check(CLI::IsMember({"hyperplane", "x1-split", "plane", "aux"}));
  restrict->add_option("--column", column, "1-based column for hyperplane restriction");

  auto* bfun = app.add_subcommand("b-function", "closed-form b-function");
  common(bfun, false);
  bfun->add_option("--weight", weight, "first, or e<i> for a unit weight");

  auto* mono = app.add_subcommand("monodromy", "monodromy rotation numbers");
  common(mono, true);

  auto* semi = app.add_subcommand("semigroup", "semigroup data and parameter class");
  common(semi, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    CurveMatrix a = parse_matrix(matrix_text);
    Rational beta = parse_flag_rational("--beta", beta_text);
    json result;

    if (exponents->parsed()) {
      if (point_text != "smooth" && point_text != "generic")
        throw FlagError("--point expects smooth or generic for exponents");
      auto list = point_text == "generic" ? generic_exponents(a, beta) : singular_exponents(a, beta);
      json vs = json::array();
      for (const auto& e : list) vs.push_back(vector_json(e.v));
      if (a.smooth()) result = vs;
      else result = {{"auxiliary_matrix", auxiliary_matrix(a).entries()}, {"exponents", vs}};
    } else if (solve->parsed()) {
      result = basis_json(solution_basis(a, beta, parse_point(point_text), parse_order(s_text), truncation));
    } else if (verify->parsed()) {
      json items = json::array();
      Rational worst = 0;
      auto check = [&](const std::string& label, const FormalSeries& s, bool modified) {
        Verdict v = verify_series(a, beta, s, modified, radius);
        v.report["label"] = label;
        worst = std::max(worst, v.violation);
        items.push_back(v.report);
      };
      if (!series_file.empty()) {
        std::ifstream in(series_file);
        if (!in) throw FlagError("cannot read --series file '" + series_file + "'");
        json doc;
        try {
          doc = json::parse(in);
        } catch (const json::exception& e) {
          throw Error(ErrorCode::Parse, std::string("invalid JSON in series file: ") + e.what());
        }
        if (doc.contains("basis")) {
          for (const auto& item : doc["basis"])
            check(item.value("label", std::string("series")), series_from_json(item.at("series")),
                  item.value("modified", false));
        } else {
          check("series", series_from_json(doc), false);
        }
      } else {
        SolutionBasis b = solution_basis(a, beta, parse_point(point_text), parse_order(s_text), truncation);
        for (const auto& e : b.elements) check(e.label, e.series, e.modified);
      }
      result = {{"max_violation", to_string(worst)}, {"radius", radius}, {"series", items}};
    } else if (gevrey->parsed()) {
      CoefficientStream stream;
      std::string expected;
      if (which == "factorial") {
        stream = factorial_stream(terms);
        expected = "2";
      } else if (which == "inverse-factorial") {
        stream = inverse_factorial_stream(terms);
        expected = "1";
      } else if (which == "tilde") {
        stream = designated_subseries(a, beta, {Designated::Tilde, 0}, terms);
        expected = to_string(slope(a));
      } else if (which.rfind("j=", 0) == 0) {
        std::int64_t j = to_int64(parse_flag_rational("--which", which.substr(2)));
        stream = designated_subseries(a, beta, {Designated::Exponent, j}, terms);
        expected = to_string(slope(a));
      } else {
        throw FlagError("--which expects tilde, j=<k>, factorial or inverse-factorial");
      }
      if (!csv_file.empty()) {
        std::ofstream csv(csv_file);
        csv << "k,log_abs_c\n";
        for (std::size_t i = 0; i < stream.coefficients.size(); ++i)
          if (stream.coefficients[i] != 0)
            csv << stream.exponents[i] << "," << std::setprecision(17) << log_abs(stream.coefficients[i]) << "\n";
      }
      std::ostringstream est;
      est << std::fixed << std::setprecision(6) << gevrey_index_estimate(stream);
      result = {{"estimate", est.str()}, {"expected", expected}, {"terms", terms}, {"stream", which}};
    } else if (table->parsed()) {
      GevreyOrder order = parse_order(s_text);
      std::vector<PointClass> points = {PointClass::DeepStratum, PointClass::SmoothStratum, PointClass::GenericPoint};
      if (table->count("--point")) points = {parse_point(point_text)};
      std::vector<int> degrees = {0, 1};
      if (ext_degree >= 0) degrees = {ext_degree};
      json rows = json::array();
      for (Sheaf sh : {Sheaf::Holomorphic, Sheaf::GevreyFormal, Sheaf::GevreyQuotient})
        for (PointClass pt : points)
          for (int d : degrees)
            rows.push_back({to_string(SheafTag{sh, order}), to_string(pt), d,
                            dimension_json(irregularity_dimension(a, beta, pt, {sh, order}, d))});
      result = {{"slope", to_string(slope(a))}, {"beta_class", to_string(beta_class(a, beta))}, {"rows", rows}};
    } else if (figure->parsed()) {
      Figure1 f = repro_figure1(a, parse_flag_rational("--beta-special", beta_special),
                                parse_flag_rational("--beta-generic", beta_generic),
                                parse_flag_rational("--s", s_text));
      result = {{"columns", f.column_labels}, {"rows", f.row_labels}, {"computed", f.computed},
                {"reference", f.reference}, {"matches", f.matches()}};
      if (!f.matches()) {
        err << "error: computed table differs from the reference table\n";
        out << result.dump(2) << "\n";
        return 1;
      }
    } else if (restrict->parsed()) {
      json parts = json::array();
      if (kind == "hyperplane") {
        if (column < 1) throw FlagError("--column is 1-based");
        parts.push_back(descriptor_json(restrict_hyperplane(a, beta, static_cast<std::size_t>(column - 1))));
      } else if (kind == "x1-split") {
        for (const auto& d : restrict_x1_split(a, beta)) parts.push_back(descriptor_json(d));
      } else if (kind == "plane") {
        for (const auto& d : restrict_to_plane(a, beta)) parts.push_back(descriptor_json(d));
      } else {
        AuxiliaryRestriction r = restrict_aux(a, beta);
        json q = json::array();
        for (const auto& op : r.q) q.push_back(to_string(op));
        json deltas = json::array();
        for (const auto& d : r.deltas) deltas.push_back({{"delta", d.delta}, {"rho", d.rho}});
        parts.push_back(descriptor_json(r.result));
        result = {{"auxiliary_matrix", r.auxiliary.entries()}, {"deltas", deltas}, {"q", q},
                  {"p1", to_string(r.p1)}};
      }
      result["summands"] = parts;
      for (const auto& p : parts)
        if (p["caveat"] == "GenericBetaOnly")
          err << "caveat: " << p["matrix"].dump() << " parameter " << p["parameter"].get<std::string>()
              << " holds for all but finitely many beta\n";
    } else if (bfun->parsed()) {
      WeightTag w{WeightTag::FirstCoordinate, 0};
      if (weight != "first") {
        if (weight.size() < 2 || weight[0] != 'e') throw FlagError("--weight expects first or e<i>");
        std::int64_t i = to_int64(parse_flag_rational("--weight", weight.substr(1)));
        if (i < 1) throw FlagError("--weight index is 1-based");
        w = {WeightTag::StandardBasis, static_cast<std::size_t>(i - 1)};
      }
      BFunction b = b_function(a, w);
      json roots = json::array();
      for (const auto& r : b.roots) roots.push_back(number(r));
      result = {{"roots", roots}, {"caveat", to_string(b.caveat)}};
      if (b.caveat == Caveat::GenericBetaOnly)
        err << "caveat: b-function holds for all but finitely many beta\n";
    } else if (mono->parsed()) {
      json rot = json::array();
      for (const auto& r : monodromy_rotations(a, beta)) rot.push_back(to_string(r));
      result = {{"rotations", rot}};
    } else if (semi->parsed()) {
      json deltas = json::array();
      for (const auto& d : delta_exponents(a)) deltas.push_back({{"delta", d.delta}, {"rho", d.rho}});
      result = {{"frobenius", frobenius_number(a)}, {"deltas", deltas},
                {"beta_class", to_string(beta_class(a, beta))}};
    }

    if (format == "table") render_table(result, out);
    else out << result.dump(2) << "\n";
    return 0;
  } catch (const FlagError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error [" << error_name(e.code()) << "]: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gkz::cli
