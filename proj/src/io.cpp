#include "lcb/io.hpp"

#include <charconv>
#include <sstream>

namespace lcb::io {

using nlohmann::json;

std::vector<double> parse_numbers(std::string_view text) {
    std::string s(text);
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && s[first] == '[') {
        json j;
        try {
            j = json::parse(s);
        } catch (const json::exception& e) {
            throw std::invalid_argument(std::string("malformed JSON array: ") + e.what());
        }
        std::vector<double> out;
        for (const auto& v : j) {
            if (!v.is_number()) throw std::invalid_argument("JSON array must contain only numbers");
            out.push_back(v.get<double>());
        }
        return out;
    }
    std::vector<double> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r\n");
        const auto e = cell.find_last_not_of(" \t\r\n");
        if (b == std::string::npos) throw std::invalid_argument("empty value in list");
        const std::string tok = cell.substr(b, e - b + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw std::invalid_argument("not a number: '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

Sample parse_sample(const SupportGrid& grid, std::string_view text) {
    const auto values = parse_numbers(text);
    return make_sample(grid, values);
}

Distribution parse_distribution(const SupportGrid& grid, std::string_view text) {
    return Distribution(grid, parse_numbers(text));
}

json to_json(const SupportGrid& grid) {
    return json{{"s_min", grid.s_min()}, {"s_max", grid.s_max()}, {"m", grid.size()}};
}

json to_json(const Sample& x) {
    return json{{"indices", std::vector<int>(x.indices().begin(), x.indices().end())}, {"values", x.values()}};
}

json to_json(const Distribution& F) { return json(std::vector<double>(F.mass().begin(), F.mass().end())); }

json to_json(const SupportSet& C) { return json(std::vector<int>(C.indices().begin(), C.indices().end())); }

json to_json(const OracleResult& r) {
    return json{{"value", r.value},
                {"witness", to_json(r.witness)},
                {"constraint_prob", r.constraint_prob},
                {"constraint", "geq_alpha"},
                {"support_used", to_json(r.support_used)},
                {"final_step", r.final_step},
                {"evaluations", r.evaluations}};
}

json to_json(const QuantileBoundResult& r) {
    return json{{"p_hat", r.p_hat},
                {"bound", r.bound},
                {"epsilon", r.epsilon},
                {"delta", r.delta},
                {"c", r.c},
                {"iterations", r.iterations},
                {"i", r.quantile},
                {"alpha", r.alpha},
                {"tail_convention", tail_convention_name(r.convention)}};
}

json to_json(const Bracket& b) { return json{{"lo", b.lo}, {"hi", b.hi}, {"clamped_top", b.clamped_top}}; }

json to_json(const CoverageReport& r) {
    json j{{"method", r.method},
           {"alpha", r.alpha},
           {"n", r.n},
           {"distribution", to_json(r.distribution)},
           {"coverage", r.coverage},
           {"mode", r.mode == CoverageMode::Exact ? "exact" : "monte_carlo"}};
    if (r.mode == CoverageMode::MonteCarlo) {
        j["trials"] = r.trials;
        j["seed"] = r.seed;
    }
    return j;
}

json to_json(const VerifyReport& r) {
    return json{{"theorem", r.theorem},
                {"instances_checked", r.instances_checked},
                {"failures", r.failures},
                {"tolerance", r.tolerance},
                {"skipped", r.skipped},
                {"max_violation", r.max_violation},
                {"pass", r.pass()}};
}

json envelope(std::string_view kind, json payload) {
    json j{{"schema_version", kSchemaVersion}, {"kind", kind}};
    j["result"] = std::move(payload);
    return j;
}

namespace {

std::string csv_cell(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return s;
}

void csv_rows(const json& obj, std::ostringstream& os, bool header) {
    if (header) {
        bool first = true;
        for (auto it = obj.begin(); it != obj.end(); ++it, first = false) os << (first ? "" : ",") << it.key();
        os << '\n';
    }
    bool first = true;
    for (auto it = obj.begin(); it != obj.end(); ++it, first = false) os << (first ? "" : ",") << csv_cell(*it);
    os << '\n';
}

}  // namespace

std::string to_csv(const json& flat) {
    std::ostringstream os;
    if (flat.is_array()) {
        bool header = true;
        for (const auto& row : flat) {
            csv_rows(row, os, header);
            header = false;
        }
    } else {
        csv_rows(flat, os, true);
    }
    return os.str();
}

}  // namespace lcb::io
