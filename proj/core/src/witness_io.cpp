#include <json.hpp>

#include "rdf/error.hpp"
#include "rdf/witness.hpp"

namespace rdf {

using json = nlohmann::json;

namespace {

json piece_to_json(const Piece& p) {
  if (p.kind == Piece::Kind::Tail) {
    return {{"kind", "tail"}, {"side", p.left ? "left" : "right"}, {"v", p.v}, {"y", p.y},
            {"t", p.t},       {"gamma", p.gamma},                  {"lambda", p.lambda}};
  }
  json knots = json::array();
  for (const auto& [x, d] : p.knots) knots.push_back({x, d});
  return {{"kind", "quadratic"}, {"y0", p.y0}, {"knots", knots}};
}

Piece piece_from_json(const json& j) {
  const std::string kind = j.at("kind");
  if (kind == "tail") {
    return Piece::tail(j.at("side") == "left", j.at("v"), j.at("y"), j.at("t"), j.at("gamma"), j.value("lambda", 1.0));
  }
  if (kind != "quadratic") throw Error("unknown piece kind '" + kind + "'");
  std::vector<std::pair<double, double>> knots;
  for (const auto& k : j.at("knots")) knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
  return Piece::quadratic(std::move(knots), j.at("y0"));
}

}  // namespace

std::string witness_to_json(const ExplicitModel& model, const CertificationReport* report) {
  json doc;
  doc["schema"] = kWitnessSchema;
  json numeric = json::object();
  for (const auto& [name, value] : model.numeric) numeric[name] = to_string(value);
  doc["numeric"] = numeric;
  json functions = json::object();
  for (const auto& [name, f] : model.functional) {
    json pieces = json::array();
    for (const auto& p : f.pieces()) pieces.push_back(piece_to_json(p));
    functions[name] = {{"breakpoints", f.breakpoints()}, {"pieces", pieces}};
  }
  doc["functions"] = functions;
  if (report) {
    json lits = json::array();
    for (const auto& l : report->literals) {
      json e = {{"literal", l.literal}, {"truth", to_string(l.truth)}};
      if (std::isfinite(l.margin)) e["margin"] = l.margin;
      lits.push_back(e);
    }
    json cert = {{"status", to_string(report->status)}, {"literals", lits}};
    if (std::isfinite(report->min_margin)) cert["min_margin"] = report->min_margin;
    if (!report->violated.empty()) cert["violated"] = report->violated;
    doc["certification"] = cert;
  }
  return doc.dump(2);
}

ExplicitModel witness_from_json(const std::string& text) {
  ExplicitModel model;
  try {
    json doc = json::parse(text);
    if (doc.value("schema", "") != kWitnessSchema) throw Error("witness schema is not " + std::string(kWitnessSchema));
    for (const auto& [name, value] : doc.at("numeric").items()) {
      auto q = parse_rational(value.get<std::string>());
      if (!q) throw Error("malformed rational for '" + name + "'");
      model.numeric[name] = *q;
    }
    for (const auto& [name, f] : doc.at("functions").items()) {
      std::vector<Piece> pieces;
      for (const auto& p : f.at("pieces")) pieces.push_back(piece_from_json(p));
      model.functional.emplace(name, PiecewiseModel(f.at("breakpoints").get<std::vector<double>>(), std::move(pieces)));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed witness: ") + e.what());
  }
  return model;
}

}  // namespace rdf
