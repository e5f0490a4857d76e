#include "cotsum/mc_io.hpp"
#include "cotsum/constants.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace cotsum {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* name : allowed)
            if (it.key() == name) { ok = true; break; }
        if (!ok)
            throw std::invalid_argument(std::string("config: unknown field \"") + it.key()
                                        + "\" in " + where);
    }
}

DensitySpec parse_density(const json& j) {
    reject_unknown(j, {"kind", "L", "points"}, "density");
    DensitySpec d;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform") {
        d.kind = DensitySpec::Kind::uniform;
    } else if (kind == "gauss_measure") {
        d.kind = DensitySpec::Kind::gauss_measure;
    } else if (kind == "linear_lipschitz") {
        d.kind = DensitySpec::Kind::linear_lipschitz;
        d.L = j.at("L").get<double>();
    } else if (kind == "table") {
        d.kind = DensitySpec::Kind::table;
        for (const auto& pt : j.at("points"))
            d.knots.emplace_back(pt.at(0).get<double>(), pt.at(1).get<double>());
    } else {
        throw std::invalid_argument("config: unknown density kind \"" + kind + "\"");
    }
    d.validate();
    return d;
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j = json::parse(json_text);
    reject_unknown(j, {"statistic", "N_ladder", "M", "density", "seed", "worker_count"},
                   "experiment config");
    ExperimentConfig cfg;

    const json& st = j.at("statistic");
    reject_unknown(st, {"family", "p", "g", "ru_k"}, "statistic");
    cfg.statistic.family = family_from_string(st.at("family").get<std::string>());
    if (st.contains("p")) cfg.statistic.p = st.at("p").get<double>();
    if (st.contains("g")) cfg.statistic.g = GSpec::from_string(st.at("g").get<std::string>());
    if (st.contains("ru_k")) cfg.statistic.ru_k = st.at("ru_k").get<std::size_t>();

    for (const auto& n : j.at("N_ladder")) cfg.n_ladder.push_back(n.get<std::uint64_t>());
    cfg.samples = j.at("M").get<std::uint64_t>();
    cfg.density = j.contains("density") ? parse_density(j.at("density")) : DensitySpec{};
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("worker_count")) cfg.worker_count = j.at("worker_count").get<unsigned>();
    cfg.validate();
    return cfg;
}

std::string experiment_config_to_json(const ExperimentConfig& config) {
    json st = {{"family", family_name(config.statistic.family)}};
    if (config.statistic.p != 2.0) st["p"] = config.statistic.p;
    if (config.statistic.g.kind != GSpec::Kind::none) st["g"] = config.statistic.g.name();
    if (config.statistic.family == Family::ru_mean) st["ru_k"] = config.statistic.ru_k;
    json d = {{"kind", config.density.name()}};
    if (config.density.kind == DensitySpec::Kind::linear_lipschitz) d["L"] = config.density.L;
    if (config.density.kind == DensitySpec::Kind::table) {
        json pts = json::array();
        for (auto& kv : config.density.knots) pts.push_back({kv.first, kv.second});
        d["points"] = pts;
    }
    json j = {{"statistic", st},
              {"N_ladder", config.n_ladder},
              {"M", config.samples},
              {"density", d},
              {"seed", config.seed}};
    if (config.worker_count) j["worker_count"] = config.worker_count;
    return j.dump(2);
}

const char* const kResultCsvHeader = "statistic,N,M,seed,ks,q01,q25,q50,q75,q99,mean,elapsed_s";

namespace {
std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace

std::string result_row_to_csv(const ResultRow& row) {
    std::ostringstream os;
    os << row.statistic << ',' << row.N << ',' << row.M << ',' << row.seed << ','
       << fmt_full(row.ks) << ',' << fmt_full(row.q01) << ',' << fmt_full(row.q25) << ','
       << fmt_full(row.q50) << ',' << fmt_full(row.q75) << ',' << fmt_full(row.q99) << ','
       << fmt_full(row.mean) << ',' << fmt_full(row.elapsed_s);
    return os.str();
}

void write_result_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << kResultCsvHeader << '\n';
    for (const auto& row : rows) os << result_row_to_csv(row) << '\n';
}

std::vector<ResultRow> parse_result_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("csv: empty input");
    if (line != kResultCsvHeader)
        throw std::invalid_argument("csv: unexpected header \"" + line + "\"");
    std::vector<ResultRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> f;
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (f.size() != 12) throw std::invalid_argument("csv: bad row \"" + line + "\"");
        ResultRow r;
        r.statistic = f[0];
        r.N = std::stoull(f[1]);
        r.M = std::stoull(f[2]);
        r.seed = std::stoull(f[3]);
        r.ks = std::stod(f[4]);
        r.q01 = std::stod(f[5]);
        r.q25 = std::stod(f[6]);
        r.q50 = std::stod(f[7]);
        r.q75 = std::stod(f[8]);
        r.q99 = std::stod(f[9]);
        r.mean = std::stod(f[10]);
        r.elapsed_s = std::stod(f[11]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string result_rows_to_json(const std::vector<ResultRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"statistic", r.statistic},
                       {"N", r.N},
                       {"M", r.M},
                       {"seed", r.seed},
                       {"ks", fmt_full(r.ks)},
                       {"q01", fmt_full(r.q01)},
                       {"q25", fmt_full(r.q25)},
                       {"q50", fmt_full(r.q50)},
                       {"q75", fmt_full(r.q75)},
                       {"q99", fmt_full(r.q99)},
                       {"mean", fmt_full(r.mean)},
                       {"elapsed_s", fmt_full(r.elapsed_s)}});
    }
    return json{{"rows", arr}}.dump(2);
}

std::string constants_table_to_json() {
    json arr = json::array();
    for (const auto& e : constants::table()) {
        arr.push_back({{"name", e.name},
                       {"value", fmt_full(e.value)},
                       {"error_estimate", fmt_full(e.error_estimate)},
                       {"route_count", e.route_count}});
    }
    return json{{"constants", arr}}.dump(2);
}

std::string constants_table_to_csv() {
    std::ostringstream os;
    os << "name,value,error_estimate,route_count\n";
    for (const auto& e : constants::table())
        os << e.name << ',' << fmt_full(e.value) << ',' << fmt_full(e.error_estimate) << ','
           << e.route_count << '\n';
    return os.str();
}

} // namespace cotsum
