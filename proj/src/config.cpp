#include "ibs2/config.hpp"

#include <cstdlib>
#include <set>

#include "json.hpp"

#include "ibs2/errors.hpp"
#include "ibs2/io.hpp"

namespace ibs2 {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& origin, const std::string& what) {
    throw FormatError(origin + ": " + what);
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& origin, const std::string& group) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            bad(origin, "unknown key '" + group + it.key() + "'");
}

double get_num(const json& obj, const char* key, double fallback, const std::string& origin,
               const std::string& group) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) bad(origin, "'" + group + key + "' must be a number");
    return obj[key].get<double>();
}

int get_int(const json& obj, const char* key, int fallback, const std::string& origin,
            const std::string& group) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) bad(origin, "'" + group + key + "' must be an integer");
    return obj[key].get<int>();
}

std::uint64_t get_u64(const json& obj, const char* key, std::uint64_t fallback,
                      const std::string& origin, const std::string& group) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_unsigned() && !obj[key].is_number_integer())
        bad(origin, "'" + group + key + "' must be a non-negative integer");
    if (obj[key].is_number_integer() && obj[key].get<long long>() < 0)
        bad(origin, "'" + group + key + "' must be a non-negative integer");
    return obj[key].get<std::uint64_t>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text, const std::string& origin) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad(origin, std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) bad(origin, "top level must be a JSON object");
    check_keys(root, {"grid", "directions", "freq", "pnodes", "recon", "synth", "noise", "media"},
               origin, "");

    RunConfig cfg;
    if (root.contains("grid")) {
        const json& g = root["grid"];
        if (!g.is_object()) bad(origin, "'grid' must be an object");
        check_keys(g, {"n_out"}, origin, "grid.");
        cfg.n_out = get_int(g, "n_out", cfg.n_out, origin, "grid.");
        if (cfg.n_out < 2) bad(origin, "'grid.n_out' must be >= 2");
    }
    if (root.contains("directions")) {
        const json& d = root["directions"];
        if (!d.is_object()) bad(origin, "'directions' must be an object");
        check_keys(d, {"n_in"}, origin, "directions.");
        cfg.n_in = get_int(d, "n_in", cfg.n_in, origin, "directions.");
        if (cfg.n_in < 1) bad(origin, "'directions.n_in' must be >= 1");
    }
    if (root.contains("freq")) {
        const json& f = root["freq"];
        if (!f.is_object()) bad(origin, "'freq' must be an object");
        check_keys(f, {"k", "ell"}, origin, "freq.");
        cfg.k = get_num(f, "k", cfg.k, origin, "freq.");
        cfg.ell = get_num(f, "ell", cfg.ell, origin, "freq.");
        if (!(cfg.k > 0.0)) bad(origin, "'freq.k' must be > 0");
        if (!(cfg.ell > 1.0)) bad(origin, "'freq.ell' must be > 1");
    }
    if (root.contains("pnodes")) {
        const json& p = root["pnodes"];
        if (!p.is_object()) bad(origin, "'pnodes' must be an object");
        check_keys(p, {"T", "M"}, origin, "pnodes.");
        cfg.T = get_int(p, "T", cfg.T, origin, "pnodes.");
        cfg.M = get_int(p, "M", cfg.M, origin, "pnodes.");
        if (cfg.T < 0 || cfg.M < 0) bad(origin, "'pnodes.T'/'pnodes.M' must be >= 0");
    }
    if (root.contains("recon")) {
        const json& r = root["recon"];
        if (!r.is_object()) bad(origin, "'recon' must be an object");
        check_keys(r, {"alpha_tilde", "epsilon", "N", "term_frequencies"}, origin, "recon.");
        cfg.recon.alpha_tilde =
            get_num(r, "alpha_tilde", cfg.recon.alpha_tilde, origin, "recon.");
        cfg.recon.epsilon = get_num(r, "epsilon", cfg.recon.epsilon, origin, "recon.");
        cfg.recon.N = get_int(r, "N", cfg.recon.N, origin, "recon.");
        if (!(cfg.recon.alpha_tilde > 0.0 && cfg.recon.alpha_tilde < 1.0))
            bad(origin, "'recon.alpha_tilde' must lie in (0, 1)");
        if (cfg.recon.N < 1) bad(origin, "'recon.N' must be >= 1");
        if (r.contains("term_frequencies")) {
            const json& tf = r["term_frequencies"];
            if (!tf.is_array()) bad(origin, "'recon.term_frequencies' must be an array of pairs");
            for (const json& pair : tf) {
                if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
                    !pair[1].is_number())
                    bad(origin, "'recon.term_frequencies' entries must be [k, lk] numbers");
                const double tk = pair[0].get<double>(), tlk = pair[1].get<double>();
                if (!(tk > 0.0 && tlk > tk))
                    bad(origin, "'recon.term_frequencies' entries need 0 < k < lk");
                cfg.recon.term_frequencies.emplace_back(tk, tlk);
            }
        }
    }
    if (root.contains("synth")) {
        const json& s = root["synth"];
        if (!s.is_object()) bad(origin, "'synth' must be an object");
        check_keys(s, {"J_max", "tol"}, origin, "synth.");
        cfg.J_max = get_int(s, "J_max", cfg.J_max, origin, "synth.");
        cfg.synth_tol = get_num(s, "tol", cfg.synth_tol, origin, "synth.");
        if (cfg.J_max < 1) bad(origin, "'synth.J_max' must be >= 1");
        if (!(cfg.synth_tol > 0.0)) bad(origin, "'synth.tol' must be > 0");
    }
    if (root.contains("noise")) {
        const json& n = root["noise"];
        if (!n.is_object()) bad(origin, "'noise' must be an object");
        check_keys(n, {"level", "seed"}, origin, "noise.");
        cfg.noise_level = get_num(n, "level", cfg.noise_level, origin, "noise.");
        cfg.noise_seed = get_u64(n, "seed", cfg.noise_seed, origin, "noise.");
        if (cfg.noise_level < 0.0) bad(origin, "'noise.level' must be >= 0");
    }
    if (root.contains("media")) {
        const json& m = root["media"];
        if (!m.is_object()) bad(origin, "'media' must be an object");
        check_keys(m, {"kind", "J", "seed", "magnitude_gamma", "magnitude_eta"}, origin,
                   "media.");
        if (m.contains("kind")) {
            if (!m["kind"].is_string()) bad(origin, "'media.kind' must be a string");
            try {
                cfg.media.kind = media_kind_from_string(m["kind"].get<std::string>());
            } catch (const InvalidArgument& e) {
                bad(origin, e.what());
            }
        }
        cfg.media.J = get_int(m, "J", cfg.media.J, origin, "media.");
        cfg.media.seed = get_u64(m, "seed", cfg.media.seed, origin, "media.");
        cfg.media.magnitude_gamma =
            get_num(m, "magnitude_gamma", cfg.media.magnitude_gamma, origin, "media.");
        cfg.media.magnitude_eta =
            get_num(m, "magnitude_eta", cfg.media.magnitude_eta, origin, "media.");
        if (cfg.media.J < 1) bad(origin, "'media.J' must be >= 1");
        if (cfg.media.magnitude_gamma < 0.0 || cfg.media.magnitude_eta < 0.0)
            bad(origin, "'media.magnitude_*' must be >= 0");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) { return parse_config(read_text(path), path); }

std::string config_to_json(const RunConfig& cfg) {
    json tf = json::array();
    for (const auto& [tk, tlk] : cfg.recon.term_frequencies) tf.push_back({tk, tlk});
    const json root = {
        {"grid", {{"n_out", cfg.n_out}}},
        {"directions", {{"n_in", cfg.n_in}}},
        {"freq", {{"k", cfg.k}, {"ell", cfg.ell}}},
        {"pnodes", {{"T", cfg.T}, {"M", cfg.M}}},
        {"recon",
         {{"alpha_tilde", cfg.recon.alpha_tilde},
          {"epsilon", cfg.recon.epsilon},
          {"N", cfg.recon.N},
          {"term_frequencies", tf}}},
        {"synth", {{"J_max", cfg.J_max}, {"tol", cfg.synth_tol}}},
        {"noise", {{"level", cfg.noise_level}, {"seed", cfg.noise_seed}}},
        {"media",
         {{"kind", to_string(cfg.media.kind)},
          {"J", cfg.media.J},
          {"seed", cfg.media.seed},
          {"magnitude_gamma", cfg.media.magnitude_gamma},
          {"magnitude_eta", cfg.media.magnitude_eta}}},
    };
    return root.dump(2);
}

std::string cache_dir_from_env() {
    const char* v = std::getenv("IBS2_CACHE_DIR");
    return v ? std::string(v) : std::string();
}

}  // namespace ibs2
