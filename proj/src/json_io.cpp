#include "pvote/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pvote {

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

PerVoterDistribution dist_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "pl") return PlSequential{j.at("theta").get<double>()};
  if (kind == "top_or_last") {
    return TopOrLast{j.at("favored").get<std::size_t>(), j.at("q").get<double>()};
  }
  if (kind == "top_uniform") {
    return TopUniformThenFixed{j.at("favored_set").get<std::vector<std::size_t>>(),
                               j.at("q").get<double>(), j.at("runner_up").get<std::size_t>()};
  }
  throw std::runtime_error("unknown distribution kind: " + kind);
}

json dist_to_json(const PerVoterDistribution& dist) {
  json j;
  if (const auto* pl = std::get_if<PlSequential>(&dist)) {
    j["kind"] = "pl";
    j["theta"] = pl->theta;
  } else if (const auto* tol = std::get_if<TopOrLast>(&dist)) {
    j["kind"] = "top_or_last";
    j["favored"] = tol->favored;
    j["q"] = tol->q;
  } else {
    const auto& tuf = std::get<TopUniformThenFixed>(dist);
    j["kind"] = "top_uniform";
    j["favored_set"] = tuf.favored_set;
    j["q"] = tuf.q;
    j["runner_up"] = tuf.runner_up;
  }
  return j;
}

bool same_dist(const PerVoterDistribution& a, const PerVoterDistribution& b) {
  return dist_to_json(a) == dist_to_json(b);
}

}  // namespace

MetricInstance load_instance(const std::string& path) {
  const json j = read_json_file(path);
  const std::string kind = j.at("kind").get<std::string>();
  MetricInstance instance = [&] {
    if (kind == "euclidean") {
      return MetricInstance::euclidean(j.at("dim").get<int>(),
                                       j.at("voters").get<std::vector<std::vector<double>>>(),
                                       j.at("candidates").get<std::vector<std::vector<double>>>());
    }
    if (kind == "matrix") {
      const auto rows = j.at("dist").get<std::vector<std::vector<double>>>();
      const auto n = j.at("n").get<std::size_t>();
      const auto m = j.at("m").get<std::size_t>();
      std::vector<double> flat;
      flat.reserve(rows.size() * rows.size());
      for (const auto& row : rows) {
        if (row.size() != rows.size()) throw std::runtime_error("distance matrix is not square");
        flat.insert(flat.end(), row.begin(), row.end());
      }
      return MetricInstance::from_matrix(n, m, std::move(flat));
    }
    throw std::runtime_error("unknown instance kind: " + kind);
  }();
  const MetricValidation report = validate_metric(instance);
  if (!report.ok) {
    std::ostringstream msg;
    msg << "invalid metric in " << path << ":";
    for (const auto& s : report.structural) msg << ' ' << s << ';';
    if (report.violation_count > 0) {
      msg << ' ' << report.violation_count << " triangle violation(s)";
    }
    throw std::runtime_error(msg.str());
  }
  return instance;
}

void save_instance(const MetricInstance& instance, const std::string& path) {
  json j;
  if (instance.is_euclidean()) {
    const auto& e = instance.embedding();
    j["kind"] = "euclidean";
    j["dim"] = e.dim;
    auto dump_points = [&](const std::vector<std::array<double, 3>>& pts) {
      json arr = json::array();
      for (const auto& p : pts) {
        json point = json::array();
        for (int d = 0; d < e.dim; ++d) point.push_back(p[static_cast<std::size_t>(d)]);
        arr.push_back(std::move(point));
      }
      return arr;
    };
    j["voters"] = dump_points(e.voters);
    j["candidates"] = dump_points(e.candidates);
  } else {
    const auto& mx = instance.matrix();
    j["kind"] = "matrix";
    j["n"] = mx.n;
    j["m"] = mx.m;
    const std::size_t k = mx.n + mx.m;
    json rows = json::array();
    for (std::size_t a = 0; a < k; ++a) {
      json row = json::array();
      for (std::size_t b = 0; b < k; ++b) row.push_back(mx.dist[a * k + b]);
      rows.push_back(std::move(row));
    }
    j["dist"] = std::move(rows);
  }
  write_json_file(j, path);
}

VoterModel load_model(const std::string& path, std::size_t num_voters) {
  const json j = read_json_file(path);
  const std::string model = j.at("model").get<std::string>();
  if (model == "pl") return VoterModel::pl(j.at("theta").get<double>());
  if (model == "construction") {
    const PerVoterDistribution dist = dist_from_json(j);
    return VoterModel::per_voter(std::vector<PerVoterDistribution>(num_voters, dist));
  }
  if (model == "per_voter") {
    std::vector<PerVoterDistribution> dists;
    for (const auto& group : j.at("groups")) {
      const auto count = group.at("count").get<std::size_t>();
      const PerVoterDistribution dist = dist_from_json(group.at("dist"));
      for (std::size_t c = 0; c < count; ++c) dists.push_back(dist);
    }
    if (num_voters != 0 && dists.size() != num_voters) {
      throw std::runtime_error("model covers " + std::to_string(dists.size()) + " voters, instance has " +
                               std::to_string(num_voters));
    }
    return VoterModel::per_voter(std::move(dists));
  }
  throw std::runtime_error("unknown model: " + model);
}

void save_model(const VoterModel& model, const std::string& path) {
  json j;
  if (model.is_pl()) {
    j["model"] = "pl";
    j["theta"] = model.pl_theta();
  } else {
    j["model"] = "per_voter";
    json groups = json::array();
    std::size_t i = 0;
    const std::size_t n = model.num_voters();
    while (i < n) {
      std::size_t run = i + 1;
      while (run < n && same_dist(model.dist(run), model.dist(i))) ++run;
      json group;
      group["count"] = run - i;
      group["dist"] = dist_to_json(model.dist(i));
      groups.push_back(std::move(group));
      i = run;
    }
    j["groups"] = std::move(groups);
  }
  write_json_file(j, path);
}

std::string estimate_to_json(const DistortionEstimate& estimate) {
  json j;
  j["mean_ratio"] = estimate.mean_ratio;
  j["stderr"] = estimate.stderr_mean;
  j["trials"] = estimate.trials;
  j["seed"] = estimate.seed;
  j["rule"] = estimate.rule;
  j["model"] = estimate.model;
  return j.dump(2);
}

std::string constants_to_json(const DerivedConstants& constants) {
  json j;
  j["gamma_mid"] = constants.gamma_mid;
  j["gamma_out"] = constants.gamma_out;
  j["x_star_mid"] = constants.x_star_mid;
  j["x_star_out"] = constants.x_star_out;
  j["g"] = constants.g_name;
  return j.dump(2);
}

}  // namespace pvote
