#include "nctorus/serialize.hpp"

#include "nctorus/functional.hpp"

namespace nct {

Json element_to_json(const TorusElement& a) {
  Json coeffs = Json::array();
  for (const auto& [key, c] : a.coeffs()) {
    coeffs.push_back(Json::array({key.m, key.n, std::real(c), std::imag(c)}));
  }
  return Json{{"theta", a.theta()}, {"coeffs", std::move(coeffs)}};
}

TorusElement element_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("theta") || !j.contains("coeffs")) {
    throw ConfigError("element: expected {\"theta\", \"coeffs\"}");
  }
  TorusElement out(j.at("theta").get<double>());
  for (const auto& row : j.at("coeffs")) {
    if (!row.is_array() || row.size() != 4) {
      throw ConfigError("element: coeff rows must be [m, n, re, im]");
    }
    out.add_coeff(row[0].get<int>(), row[1].get<int>(),
                  Complex(row[2].get<double>(), row[3].get<double>()));
  }
  return out;
}

TorusElement parse_element_expr(const Json& j, double theta, double tol,
                                TruncationPolicy& policy, int oracle_q) {
  if (!j.is_object()) {
    throw ConfigError("element expression: expected an object");
  }
  if (j.contains("coeffs")) {
    TorusElement out(theta);
    for (const auto& row : j.at("coeffs")) {
      if (!row.is_array() || row.size() != 4) {
        throw ConfigError("element expression: coeff rows are [m, n, re, im]");
      }
      out.add_coeff(row[0].get<int>(), row[1].get<int>(),
                    Complex(row[2].get<double>(), row[3].get<double>()));
    }
    return out;
  }
  if (j.contains("circle")) {
    const Json& c = j.at("circle");
    std::vector<double> samples = c.at("samples").get<std::vector<double>>();
    return circle_function(theta, samples, c.at("j").get<int>(),
                           c.at("K").get<int>());
  }
  if (j.contains("scalar")) {
    return TorusElement::unit(theta, j.at("scalar").get<double>());
  }
  if (j.contains("inverse_of")) {
    TorusElement base =
        parse_element_expr(j.at("inverse_of"), theta, tol, policy, oracle_q);
    return invert(base, tol, policy, oracle_q).value;
  }
  throw ConfigError(
      "element expression: expected coeffs, circle, scalar or inverse_of");
}

Metric parse_metric_spec(const Json& j, double theta, double tol,
                         TruncationPolicy& policy, int oracle_q) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ConfigError("metric: expected {\"kind\": ...}");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "flat") return flat_metric(theta);
  if (kind == "diagonal") {
    return diagonal_metric(
        parse_element_expr(j.at("a1"), theta, tol, policy, oracle_q),
        parse_element_expr(j.at("a2"), theta, tol, policy, oracle_q));
  }
  if (kind == "conformal") {
    return conformal_metric(
        parse_element_expr(j.at("h"), theta, tol, policy, oracle_q), tol,
        policy);
  }
  if (kind == "general") {
    const Json& rows = j.at("g");
    if (!rows.is_array() || rows.size() != 2 || rows[0].size() != 2 ||
        rows[1].size() != 2) {
      throw ConfigError("metric: general kind needs a 2x2 \"g\" array");
    }
    AlgebraMatrix g(theta);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        g.at(r, c) =
            parse_element_expr(rows[r][c], theta, tol, policy, oracle_q);
    return general_metric(g);
  }
  throw ConfigError("metric: unknown kind '" + kind + "'");
}

}  // namespace nct
