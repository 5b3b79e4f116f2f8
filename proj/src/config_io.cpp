#include "qlga/config_io.hpp"
#include "qlga/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace qlga {

namespace {

using nlohmann::json;

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* key : allowed)
            if (item.key() == key) ok = true;
        if (!ok) throw Error(Errc::InvalidArgument, where + ": unknown key \"" + item.key() + "\"");
    }
}

double number_at(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw Error(Errc::InvalidArgument, where + ": missing \"" + key + "\"");
    const auto& v = obj.at(key);
    if (!v.is_number()) throw Error(Errc::InvalidArgument, where + ": \"" + key + "\" must be a number");
    return v.get<double>();
}

int int_at(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw Error(Errc::InvalidArgument, where + ": missing \"" + key + "\"");
    const auto& v = obj.at(key);
    if (!v.is_number_integer())
        throw Error(Errc::InvalidArgument, where + ": \"" + key + "\" must be an integer");
    return v.get<int>();
}

BoundarySpec parse_boundary(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw Error(Errc::InvalidArgument, where + " must be an object");
    require_keys(obj, {"kind", "upsilon", "zeta", "theta_prime"}, where);
    if (!obj.contains("kind")) throw Error(Errc::InvalidArgument, where + ": missing \"kind\"");
    const std::string kind = obj.at("kind").get<std::string>();

    BoundarySpec spec;
    if (kind == "periodic") spec.kind = BoundaryKind::Periodic;
    else if (kind == "typeI") spec.kind = BoundaryKind::TypeI;
    else if (kind == "typeII") spec.kind = BoundaryKind::TypeII;
    else if (kind == "typeIII") spec.kind = BoundaryKind::TypeIII;
    else throw Error(Errc::InvalidArgument, where + ": unknown boundary kind \"" + kind + "\"");

    if (obj.contains("upsilon")) spec.upsilon = number_at(obj, "upsilon", where);
    if (obj.contains("zeta")) spec.zeta = number_at(obj, "zeta", where);
    if (obj.contains("theta_prime")) spec.theta_prime = number_at(obj, "theta_prime", where);
    return spec;
}

} // namespace

LatticeConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(Errc::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw Error(Errc::InvalidArgument, "config root must be an object");
    require_keys(root, {"size", "boundaries", "segments", "junctions"}, "config");

    LatticeConfig config;
    config.size = int_at(root, "size", "config");

    if (!root.contains("boundaries"))
        throw Error(Errc::InvalidArgument, "config: missing \"boundaries\"");
    const json& bounds = root.at("boundaries");
    require_keys(bounds, {"left", "right"}, "boundaries");
    if (!bounds.contains("left") || !bounds.contains("right"))
        throw Error(Errc::InvalidArgument, "boundaries: need both \"left\" and \"right\"");
    config.left = parse_boundary(bounds.at("left"), "boundaries.left");
    config.right = parse_boundary(bounds.at("right"), "boundaries.right");
    config.periodic =
        config.left.kind == BoundaryKind::Periodic && config.right.kind == BoundaryKind::Periodic;

    if (!root.contains("segments") || !root.at("segments").is_array())
        throw Error(Errc::InvalidArgument, "config: \"segments\" must be an array");
    for (const auto& s : root.at("segments")) {
        require_keys(s, {"from", "to", "rho", "theta"}, "segment");
        Segment seg;
        seg.from = int_at(s, "from", "segment");
        seg.to = int_at(s, "to", "segment");
        seg.params.rho = number_at(s, "rho", "segment");
        seg.params.theta = number_at(s, "theta", "segment");
        config.segments.push_back(seg);
    }

    if (root.contains("junctions")) {
        if (!root.at("junctions").is_array())
            throw Error(Errc::InvalidArgument, "config: \"junctions\" must be an array");
        for (const auto& j : root.at("junctions")) {
            require_keys(j, {"kind", "site"}, "junction");
            if (!j.contains("kind")) throw Error(Errc::InvalidArgument, "junction: missing \"kind\"");
            const std::string kind = j.at("kind").get<std::string>();
            Junction junc;
            if (kind == "typeI") junc.kind = JunctionKind::TypeI;
            else if (kind == "typeII") junc.kind = JunctionKind::TypeII;
            else if (kind == "combined") junc.kind = JunctionKind::Combined;
            else throw Error(Errc::InvalidArgument, "junction: unknown kind \"" + kind + "\"");
            junc.site = int_at(j, "site", "junction");
            config.junctions.push_back(junc);
        }
    }
    return config;
}

LatticeConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidArgument, "cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string config_to_json(const LatticeConfig& config) {
    json root;
    root["size"] = config.size;
    auto boundary_json = [](const BoundarySpec& b) {
        json obj;
        obj["kind"] = boundary_kind_name(b.kind);
        if (b.upsilon) obj["upsilon"] = *b.upsilon;
        if (b.zeta) obj["zeta"] = *b.zeta;
        if (b.theta_prime) obj["theta_prime"] = *b.theta_prime;
        return obj;
    };
    root["boundaries"]["left"] = boundary_json(config.left);
    root["boundaries"]["right"] = boundary_json(config.right);
    root["segments"] = json::array();
    for (const auto& s : config.segments) {
        root["segments"].push_back(
            {{"from", s.from}, {"to", s.to}, {"rho", s.params.rho}, {"theta", s.params.theta}});
    }
    root["junctions"] = json::array();
    for (const auto& j : config.junctions) {
        root["junctions"].push_back({{"kind", junction_kind_name(j.kind)}, {"site", j.site}});
    }
    return root.dump(2);
}

} // namespace qlga
