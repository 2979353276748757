#include "fuzzyk/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

#include "fuzzyk/error.hpp"

namespace fuzzyk {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + ": missing key '" + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path + ": expected a number");
  return v.get<double>();
}

std::vector<double> as_numbers(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t as_index(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ParseError(path + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

std::size_t parse_index_key(const std::string& key, const std::string& path) {
  std::size_t idx = 0;
  const auto res = std::from_chars(key.data(), key.data() + key.size(), idx);
  if (key.empty() || res.ec != std::errc() || res.ptr != key.data() + key.size()) {
    throw ParseError(path + ": degree key '" + key + "' is not a point index");
  }
  return idx;
}

// Validates each degree against [0,1] and the ground space before construction
// so the error can name the offending field.
DiscreteFuzzySet parse_degrees(const json& degrees, const GroundPtr& ground, const std::string& path) {
  if (!degrees.is_object()) throw ParseError(path + ": expected an object mapping point index to degree");
  std::vector<DiscreteFuzzySet::Entry> entries;
  for (const auto& [key, value] : degrees.items()) {
    const std::string field = path + "[\"" + key + "\"]";
    const std::size_t idx = parse_index_key(key, field);
    const double d = as_number(value, field);
    if (idx >= ground->count()) {
      throw ValidationError(field + ": point index " + key + " is outside the ground space (" +
                            std::to_string(ground->count()) + " points)");
    }
    if (!(d >= 0.0 && d <= 1.0)) {
      throw ValidationError(field + ": degree " + value.dump() + " is outside [0,1]");
    }
    entries.emplace_back(idx, d);
  }
  return DiscreteFuzzySet(ground, std::move(entries));
}

json degrees_to_json(const DiscreteFuzzySet& fs) {
  json degrees = json::object();
  for (const auto& [idx, d] : fs.entries()) degrees[std::to_string(idx)] = d;
  return degrees;
}

GroundPtr parse_ground(const json& g) {
  const std::string path = "ground_space";
  const json& points_json = require(g, "points", path);
  if (!points_json.is_array() || points_json.empty()) {
    throw ParseError(path + ".points: expected a non-empty array of points");
  }
  std::vector<std::vector<double>> points;
  for (std::size_t i = 0; i < points_json.size(); ++i) {
    points.push_back(as_numbers(points_json[i], path + ".points[" + std::to_string(i) + "]"));
  }
  const std::size_t dim = points.front().size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].empty() || points[i].size() != dim) {
      throw ValidationError(path + ".points[" + std::to_string(i) + "]: dimension " +
                            std::to_string(points[i].size()) + " differs from " + std::to_string(dim));
    }
  }

  std::optional<Partition> partition;
  if (const auto it = g.find("partition"); it != g.end() && !it->is_null()) {
    const std::string ppath = path + ".partition";
    const json& cells_json = require(*it, "cells", ppath);
    if (!cells_json.is_array()) throw ParseError(ppath + ".cells: expected an array of index arrays");
    std::vector<std::vector<PointIndex>> cells;
    for (std::size_t c = 0; c < cells_json.size(); ++c) {
      const std::string cpath = ppath + ".cells[" + std::to_string(c) + "]";
      if (!cells_json[c].is_array()) throw ParseError(cpath + ": expected an array of point indices");
      std::vector<PointIndex> cell;
      for (std::size_t k = 0; k < cells_json[c].size(); ++k) {
        const std::size_t idx = as_index(cells_json[c][k], cpath + "[" + std::to_string(k) + "]");
        if (idx >= points.size()) {
          throw ValidationError(cpath + "[" + std::to_string(k) + "]: unknown point index " + std::to_string(idx));
        }
        cell.push_back(idx);
      }
      cells.push_back(std::move(cell));
    }
    try {
      if (const auto m = it->find("measures"); m != it->end() && !m->is_null()) {
        partition.emplace(std::move(cells), as_numbers(*m, ppath + ".measures"), points.size());
      } else {
        partition.emplace(std::move(cells), points.size());
      }
    } catch (const DomainError& e) {
      throw ValidationError(ppath + ": " + e.what());
    }
  }
  return std::make_shared<const GroundSpace>(std::move(points), std::move(partition));
}

enum class AttrKind { discrete, gaussian };

FuzzyDatum parse_attribute(const json& a, const GroundPtr& ground, const std::string& path) {
  const json& type = require(a, "type", path);
  if (!type.is_string()) throw ParseError(path + ".type: expected a string");
  const auto kind = type.get<std::string>();
  if (kind == "discrete") {
    if (!ground) throw ValidationError(path + ": discrete attribute but the dataset has no ground_space");
    return parse_degrees(require(a, "degrees", path), ground, path + ".degrees");
  }
  if (kind == "gaussian") {
    auto means = as_numbers(require(a, "m", path), path + ".m");
    auto widths = as_numbers(require(a, "sigma", path), path + ".sigma");
    try {
      return GaussianFuzzySet(std::move(means), std::move(widths));
    } catch (const DomainError& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }
  throw ParseError(path + ".type: unknown attribute type '" + kind + "'");
}

int as_beta(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path + ": beta must be an integer");
  return v.get<int>();
}

BaseKernel parse_base_kernel(const json& k, const std::string& path) {
  if (!k.is_object()) throw ConfigError(path + ": expected an object with a 'kind'");
  const auto kind = k.value("kind", std::string());
  try {
    if (kind == "linear") return BaseKernel::linear();
    if (kind == "rbf") return BaseKernel::rbf(k.at("gamma").get<double>());
    if (kind == "polynomial") {
      return BaseKernel::polynomial(k.value("alpha", 0.0), k.value("gamma", 1.0),
                                    as_beta(k.at("beta"), path + ".beta"));
    }
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  throw ConfigError(path + ": unknown base kernel kind '" + kind + "'");
}

json base_kernel_to_json(const BaseKernel& k) {
  switch (k.kind()) {
    case BaseKernel::Kind::linear:
      return {{"kind", "linear"}};
    case BaseKernel::Kind::rbf:
      return {{"kind", "rbf"}, {"gamma", k.gamma()}};
    case BaseKernel::Kind::polynomial:
      return {{"kind", "polynomial"}, {"alpha", k.alpha()}, {"gamma", k.gamma()}, {"beta", k.beta()}};
  }
  return {};
}

FuzzyMetric parse_metric(const json& doc) {
  const auto name = doc.value("metric", std::string("ratio"));
  if (name == "ratio") return FuzzyMetric::ratio;
  throw ConfigError("kernel.metric: unknown metric '" + name + "'");
}

DiscreteFuzzySet parse_reference(const json& doc, const GroundPtr& ground) {
  const auto it = doc.find("reference");
  if (it == doc.end()) throw ConfigError("kernel.reference: the ratio metric needs an explicit reference fuzzy set");
  if (!ground) throw ConfigError("kernel.reference: dataset has no ground space");
  const json& degrees = it->is_object() && it->contains("degrees") ? (*it)["degrees"] : *it;
  try {
    return parse_degrees(degrees, ground, "kernel.reference.degrees");
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

Dataset parse_dataset(const json& doc) {
  if (!doc.is_object()) throw ParseError("dataset: expected a JSON object");
  Dataset data;
  if (const auto g = doc.find("ground_space"); g != doc.end() && !g->is_null()) data.ground = parse_ground(*g);

  const json& records = require(doc, "records", "dataset");
  if (!records.is_array()) throw ParseError("records: expected an array");
  std::vector<AttrKind> kinds;
  std::vector<std::size_t> dims;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const std::string rpath = "records[" + std::to_string(r) + "]";
    const json& rec = records[r];
    const json* attrs = &rec;
    std::string id = std::to_string(r);
    if (rec.is_object()) {
      attrs = &require(rec, "attributes", rpath);
      if (const auto it = rec.find("id"); it != rec.end()) {
        if (!it->is_string()) throw ParseError(rpath + ".id: expected a string");
        id = it->get<std::string>();
      }
    }
    const std::string apath = rec.is_object() ? rpath + ".attributes" : rpath;
    if (!attrs->is_array() || attrs->empty()) throw ParseError(apath + ": expected a non-empty array of attributes");

    Record record;
    for (std::size_t a = 0; a < attrs->size(); ++a) {
      record.push_back(parse_attribute((*attrs)[a], data.ground, apath + "[" + std::to_string(a) + "]"));
    }
    if (r == 0) {
      for (const auto& attr : record) {
        kinds.push_back(std::holds_alternative<GaussianFuzzySet>(attr) ? AttrKind::gaussian : AttrKind::discrete);
        dims.push_back(std::holds_alternative<GaussianFuzzySet>(attr) ? std::get<GaussianFuzzySet>(attr).dim() : 0);
      }
    } else {
      if (record.size() != kinds.size()) {
        throw ValidationError(rpath + ": has " + std::to_string(record.size()) + " attributes, record 0 has " +
                              std::to_string(kinds.size()));
      }
      for (std::size_t a = 0; a < record.size(); ++a) {
        const bool gaussian = std::holds_alternative<GaussianFuzzySet>(record[a]);
        if (gaussian != (kinds[a] == AttrKind::gaussian)) {
          throw ValidationError(apath + "[" + std::to_string(a) + "]: attribute kind differs from record 0");
        }
        if (gaussian && std::get<GaussianFuzzySet>(record[a]).dim() != dims[a]) {
          throw ValidationError(apath + "[" + std::to_string(a) + "]: Gaussian dimension differs from record 0");
        }
      }
    }
    data.records.push_back(std::move(record));
    data.ids.push_back(std::move(id));
  }

  if (const auto l = doc.find("labels"); l != doc.end() && !l->is_null()) {
    if (!l->is_array()) throw ParseError("labels: expected an array");
    std::vector<int> labels;
    for (std::size_t i = 0; i < l->size(); ++i) {
      const json& v = (*l)[i];
      if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1)) {
        throw ValidationError("labels[" + std::to_string(i) + "]: label must be 1 or -1");
      }
      labels.push_back(v.get<int>());
    }
    if (labels.size() != data.records.size()) {
      throw ValidationError("labels: " + std::to_string(labels.size()) + " labels for " +
                            std::to_string(data.records.size()) + " records");
    }
    data.labels = std::move(labels);
  }
  return data;
}

Dataset parse_dataset(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("dataset is not valid JSON: ") + e.what());
  }
  return parse_dataset(doc);
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file '" + path.string() + "'");
  return parse_dataset(in);
}

json to_json(const Dataset& data) {
  json doc = json::object();
  if (data.ground) {
    json points = json::array();
    for (PointIndex i = 0; i < data.ground->count(); ++i) {
      const auto p = data.ground->point(i);
      points.push_back(std::vector<double>(p.begin(), p.end()));
    }
    json ground = {{"points", std::move(points)}};
    if (const auto& part = data.ground->partition()) {
      ground["partition"] = {{"cells", part->cells()}, {"measures", part->measures()}};
    }
    doc["ground_space"] = std::move(ground);
  }
  json records = json::array();
  for (std::size_t r = 0; r < data.records.size(); ++r) {
    json attrs = json::array();
    for (const auto& attr : data.records[r]) {
      attrs.push_back(std::visit(Overloaded{
                                     [](const DiscreteFuzzySet& fs) -> json {
                                       return {{"type", "discrete"}, {"degrees", degrees_to_json(fs)}};
                                     },
                                     [](const GaussianFuzzySet& g) -> json {
                                       return {{"type", "gaussian"}, {"m", g.means()}, {"sigma", g.widths()}};
                                     },
                                 },
                                 attr));
    }
    const std::string id = r < data.ids.size() ? data.ids[r] : std::to_string(r);
    records.push_back({{"id", id}, {"attributes", std::move(attrs)}});
  }
  doc["records"] = std::move(records);
  if (data.labels) doc["labels"] = *data.labels;
  return doc;
}

FuzzyKernelSpec parse_kernel_spec(const json& doc, const GroundPtr& ground) {
  if (!doc.is_object()) throw ConfigError("kernel: expected a JSON object");
  const auto name = doc.value("family", std::string());
  try {
    if (name == "cross_product") {
      return {family::CrossProduct{parse_base_kernel(doc.at("k1"), "kernel.k1"),
                                   parse_base_kernel(doc.at("k2"), "kernel.k2")}};
    }
    if (name == "weighted_cross_product") {
      auto weights = doc.at("weights").get<std::vector<double>>();
      if (ground && weights.size() != ground->count()) {
        throw ConfigError("kernel.weights: " + std::to_string(weights.size()) + " weights for " +
                          std::to_string(ground->count()) + " ground points");
      }
      if (std::any_of(weights.begin(), weights.end(), [](double w) { return !(w >= 0.0); })) {
        throw ConfigError("kernel.weights: weights must be non-negative");
      }
      return {family::WeightedCrossProduct{parse_base_kernel(doc.at("k1"), "kernel.k1"),
                                           parse_base_kernel(doc.at("k2"), "kernel.k2"), std::move(weights)}};
    }
    if (name == "intersection") return {family::Intersection{parse_tnorm(doc.at("tnorm").get<std::string>())}};
    if (name == "nonsingleton") return {family::NonSingleton{parse_tnorm(doc.at("tnorm").get<std::string>())}};
    if (name == "nonsingleton_gaussian") return {family::NonSingletonGaussian{}};
    if (name == "distance_inner") return {family::DistanceInner{parse_metric(doc), parse_reference(doc, ground)}};
    if (name == "distance_poly") {
      return {family::DistancePolynomial(parse_metric(doc), parse_reference(doc, ground), doc.value("alpha", 0.0),
                                         doc.value("gamma", 1.0), as_beta(doc.at("beta"), "kernel.beta"))};
    }
    if (name == "distance_gaussian") {
      return {family::DistanceGaussian(parse_metric(doc), doc.at("lambda").get<double>())};
    }
  } catch (const json::exception& e) {
    throw ConfigError("kernel (" + name + "): " + e.what());
  } catch (const DomainError& e) {
    throw ConfigError("kernel (" + name + "): " + e.what());
  }
  throw ConfigError("kernel.family: unknown family '" + name + "'");
}

FuzzyKernelSpec load_kernel_spec(const std::filesystem::path& path, const GroundPtr& ground) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open kernel config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("kernel config is not valid JSON: ") + e.what());
  }
  return parse_kernel_spec(doc, ground);
}

json to_json(const FuzzyKernelSpec& spec) {
  json doc = {{"family", std::string(spec.name())}};
  std::visit(Overloaded{
                 [&](const family::CrossProduct& f) {
                   doc["k1"] = base_kernel_to_json(f.k1);
                   doc["k2"] = base_kernel_to_json(f.k2);
                 },
                 [&](const family::WeightedCrossProduct& f) {
                   doc["k1"] = base_kernel_to_json(f.k1);
                   doc["k2"] = base_kernel_to_json(f.k2);
                   doc["weights"] = f.weights;
                 },
                 [&](const family::Intersection& f) { doc["tnorm"] = std::string(to_string(f.tnorm)); },
                 [&](const family::NonSingleton& f) { doc["tnorm"] = std::string(to_string(f.tnorm)); },
                 [&](const family::NonSingletonGaussian&) {},
                 [&](const family::DistanceInner& f) {
                   doc["metric"] = std::string(to_string(f.metric));
                   doc["reference"] = {{"degrees", degrees_to_json(f.reference)}};
                 },
                 [&](const family::DistancePolynomial& f) {
                   doc["metric"] = std::string(to_string(f.metric));
                   doc["reference"] = {{"degrees", degrees_to_json(f.reference)}};
                   doc["alpha"] = f.alpha;
                   doc["gamma"] = f.gamma;
                   doc["beta"] = f.beta;
                 },
                 [&](const family::DistanceGaussian& f) {
                   doc["metric"] = std::string(to_string(f.metric));
                   doc["lambda"] = f.lambda;
                 },
             },
             spec.family);
  return doc;
}

}  // namespace fuzzyk
