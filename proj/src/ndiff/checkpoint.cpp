#include "morpi/ndiff/checkpoint.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "morpi/errors.hpp"

namespace morpi::ndiff {

using nlohmann::json;

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  return v;
}

json stats_to_json(const std::vector<AxisStats>& stats) {
  json arr = json::array();
  for (const AxisStats& s : stats) arr.push_back(json{{"mean", s.mean}, {"std", s.std}});
  return arr;
}

std::vector<AxisStats> stats_from_json(const json& arr) {
  std::vector<AxisStats> out;
  for (const json& j : arr) out.push_back({j.at("mean").get<double>(), j.at("std").get<double>()});
  return out;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& c) {
  json j;
  j["magic"] = kCheckpointMagic;
  j["arch"] = json{{"input_width", c.arch.input_width},
                   {"output_width", c.arch.output_width},
                   {"hidden_layers", c.arch.hidden_layers},
                   {"hidden_width", c.arch.hidden_width},
                   {"dropout_rate", c.arch.dropout_rate},
                   {"layer_norm_eps", c.arch.layer_norm_eps}};
  j["params"] = vector_to_json(c.flat_params);
  j["input_stats"] = stats_to_json(c.input_stats);
  j["output_stats"] = stats_to_json(c.output_stats);
  json best_val;  // null encodes "no validation loss seen yet" (infinity)
  if (std::isfinite(c.opt.best_val)) best_val = c.opt.best_val;
  j["optimizer"] = json{{"m", vector_to_json(c.opt.m)},
                        {"v", vector_to_json(c.opt.v)},
                        {"step", c.opt.step},
                        {"lr", c.opt.lr},
                        {"best_val", best_val},
                        {"plateau_count", c.opt.plateau_count},
                        {"stop_count", c.opt.stop_count},
                        {"early_stop", c.opt.early_stop},
                        {"adam",
                         json{{"lr", c.opt.adam.lr},
                              {"beta1", c.opt.adam.beta1},
                              {"beta2", c.opt.adam.beta2},
                              {"eps", c.opt.adam.eps},
                              {"weight_decay", c.opt.adam.weight_decay}}},
                        {"scheduler",
                         json{{"factor", c.opt.sched.factor},
                              {"patience", c.opt.sched.patience},
                              {"rel_threshold", c.opt.sched.rel_threshold},
                              {"early_stop_patience", c.opt.sched.early_stop_patience}}}};
  j["seeds"] = json{{"init", c.init_seed}, {"train", c.train_seed}};
  j["epoch"] = c.epoch;
  j["meta"] = c.meta;
  if (!c.created_at.empty()) j["created_at"] = c.created_at;

  std::ofstream out(path);
  if (!out) throw DataError("cannot write checkpoint " + path.string());
  out << j.dump(2) << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("checkpoint " + path.string() + ": " + e.what());
  }
  try {
    if (j.value("magic", "") != kCheckpointMagic)
      throw DataError("checkpoint " + path.string() + ": missing or unknown magic string");
    Checkpoint c;
    const json& a = j.at("arch");
    c.arch.input_width = a.at("input_width").get<int>();
    c.arch.output_width = a.at("output_width").get<int>();
    c.arch.hidden_layers = a.at("hidden_layers").get<int>();
    c.arch.hidden_width = a.at("hidden_width").get<int>();
    c.arch.dropout_rate = a.at("dropout_rate").get<double>();
    c.arch.layer_norm_eps = a.at("layer_norm_eps").get<double>();
    c.flat_params = vector_from_json(j.at("params"));
    c.input_stats = stats_from_json(j.at("input_stats"));
    c.output_stats = stats_from_json(j.at("output_stats"));
    const json& o = j.at("optimizer");
    c.opt.m = vector_from_json(o.at("m"));
    c.opt.v = vector_from_json(o.at("v"));
    c.opt.step = o.at("step").get<long>();
    c.opt.lr = o.at("lr").get<double>();
    c.opt.best_val = o.at("best_val").is_null() ? std::numeric_limits<double>::infinity()
                                                : o.at("best_val").get<double>();
    c.opt.plateau_count = o.at("plateau_count").get<int>();
    c.opt.stop_count = o.at("stop_count").get<int>();
    c.opt.early_stop = o.at("early_stop").get<bool>();
    const json& ja = o.at("adam");
    c.opt.adam = {ja.at("lr").get<double>(), ja.at("beta1").get<double>(),
                  ja.at("beta2").get<double>(), ja.at("eps").get<double>(),
                  ja.at("weight_decay").get<double>()};
    const json& js = o.at("scheduler");
    c.opt.sched = {js.at("factor").get<double>(), js.at("patience").get<int>(),
                   js.at("rel_threshold").get<double>(), js.at("early_stop_patience").get<int>()};
    c.init_seed = j.at("seeds").at("init").get<std::uint64_t>();
    c.train_seed = j.at("seeds").at("train").get<std::uint64_t>();
    c.epoch = j.at("epoch").get<long>();
    c.meta = j.value("meta", json::object());
    c.created_at = j.value("created_at", "");
    return c;
  } catch (const json::exception& e) {
    throw DataError("checkpoint " + path.string() + ": " + e.what());
  }
}

}  // namespace morpi::ndiff
