#include "qprep/config.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

namespace qprep {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

MeasurementSet MeasurementSpec::build() const {
    if (!channel.empty()) {
        if (channel == "amplitude_damping") return amplitude_damping(gamma);
        if (channel == "phase_damping") return phase_damping(gamma);
        if (channel == "generalized_amplitude_damping")
            return generalized_amplitude_damping(p, gamma);
        if (channel == "bit_flip") return bit_flip(p);
        throw std::invalid_argument("measurement: unknown channel '" + channel + "'");
    }
    return MeasurementSet::create(operators);
}

TerminalCost RunConfig::terminal() const {
    if (model == "affine") return AffineTerminal{StateParam(target)};
    return make_threshold_terminal(StateParam(target), terminal_radius, big_value);
}

MoveCost RunConfig::move() const {
    if (model == "affine") return make_quadratic_move(cost_scale);
    return make_threshold_angular_move(move_radius, big_value);
}

Problem RunConfig::problem() const { return {terminal(), move(), measurement.build()}; }

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
}

OpKind parse_kind(const std::string& s) {
    if (s == "f1") return OpKind::F1;
    if (s == "f2") return OpKind::F2;
    if (s == "j1") return OpKind::J1;
    if (s == "j2") return OpKind::J2;
    throw std::invalid_argument("config: unknown operator kind '" + s + "'");
}

MeasurementSpec parse_measurement(const json& j) {
    MeasurementSpec spec;
    if (j.contains("channel")) {
        reject_unknown(j, {"channel", "gamma", "p"}, "measurement");
        spec.channel = j.at("channel").get<std::string>();
        spec.gamma = j.value("gamma", 0.0);
        spec.p = j.value("p", 0.0);
        return spec;
    }
    reject_unknown(j, {"operators"}, "measurement");
    for (const auto& op : j.at("operators")) {
        reject_unknown(op, {"kind", "a", "b"}, "measurement.operators");
        spec.operators.push_back(MeasurementOperator::make(
            parse_kind(op.at("kind").get<std::string>()), op.at("a").get<double>(),
            op.at("b").get<double>()));
    }
    return spec;
}

} // namespace

RunConfig parse_config(const json& j) {
    reject_unknown(j,
                   {"model", "measurement", "steps", "grid_n", "cost_scale", "big_value",
                    "target", "terminal_radius", "move_radius", "seed", "trajectories",
                    "x0", "steady_tol", "dump_trajectories", "analytic"},
                   "config");
    RunConfig cfg;
    cfg.model = j.value("model", std::string("affine"));
    if (cfg.model != "affine" && cfg.model != "threshold")
        throw std::invalid_argument("config: key 'model' must be \"affine\" or \"threshold\"");
    if (!j.contains("measurement"))
        throw std::invalid_argument("config: key 'measurement' is required");
    cfg.measurement = parse_measurement(j.at("measurement"));
    cfg.steps = j.value("steps", 5);
    if (cfg.steps < 1) throw std::invalid_argument("config: key 'steps' must be >= 1");
    cfg.grid_n = j.value("grid_n", 101);
    if (cfg.grid_n < 2) throw std::invalid_argument("config: key 'grid_n' must be >= 2");
    cfg.cost_scale = j.value("cost_scale", 1.0);
    if (cfg.cost_scale <= 0.0)
        throw std::invalid_argument("config: key 'cost_scale' must be > 0");
    cfg.big_value = j.value("big_value", 100.0);
    if (cfg.big_value < 100.0)
        throw std::invalid_argument("config: key 'big_value' must be >= 100");
    cfg.target = j.value("target", 0.0);
    cfg.terminal_radius = j.value("terminal_radius", 0.2);
    cfg.move_radius = j.value("move_radius", 0.2);
    if (cfg.terminal_radius <= 0.0 || cfg.move_radius <= 0.0)
        throw std::invalid_argument("config: threshold radii must be > 0");
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.trajectories = j.value("trajectories", 10000);
    if (cfg.trajectories < 1)
        throw std::invalid_argument("config: key 'trajectories' must be >= 1");
    cfg.x0 = j.value("x0", 0.5);
    cfg.steady_tol = j.value("steady_tol", 0.01);
    cfg.dump_trajectories = j.value("dump_trajectories", false);
    if (j.contains("analytic")) {
        const json& a = j.at("analytic");
        reject_unknown(a, {"A", "B", "C"}, "analytic");
        cfg.analytic = {a.value("A", 0.0), a.value("B", 1.0), a.value("C", 0.0)};
    }
    (void)StateParam(cfg.target);
    (void)StateParam(cfg.x0);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    json j;
    in >> j;
    return parse_config(j);
}

json config_to_json(const RunConfig& cfg) {
    json m;
    if (!cfg.measurement.channel.empty()) {
        m["channel"] = cfg.measurement.channel;
        m["gamma"] = cfg.measurement.gamma;
        m["p"] = cfg.measurement.p;
    } else {
        json ops = json::array();
        for (const auto& op : cfg.measurement.operators)
            ops.push_back({{"kind", kind_name(op.kind)}, {"a", op.a}, {"b", op.b}});
        m["operators"] = std::move(ops);
    }
    return json{{"model", cfg.model},
                {"measurement", std::move(m)},
                {"steps", cfg.steps},
                {"grid_n", cfg.grid_n},
                {"cost_scale", cfg.cost_scale},
                {"big_value", cfg.big_value},
                {"target", cfg.target},
                {"terminal_radius", cfg.terminal_radius},
                {"move_radius", cfg.move_radius},
                {"seed", cfg.seed},
                {"trajectories", cfg.trajectories},
                {"x0", cfg.x0},
                {"steady_tol", cfg.steady_tol},
                {"dump_trajectories", cfg.dump_trajectories},
                {"analytic",
                 {{"A", cfg.analytic.A}, {"B", cfg.analytic.B}, {"C", cfg.analytic.C}}}};
}

} // namespace qprep
