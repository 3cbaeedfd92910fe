#include "permlim/descriptor.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace permlim {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
    throw std::invalid_argument(what + "; see docs/schema.md");
}

double parse_number(const std::string& text, const std::string& ctx) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        bad("descriptor " + ctx + ": '" + text + "' is not a number");
    }
    if (pos != text.size()) bad("descriptor " + ctx + ": '" + text + "' is not a number");
    return v;
}

double json_number(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key) || !j.at(key).is_number())
        bad(ctx + ": missing numeric field \"" + key + "\"");
    return j.at(key).get<double>();
}

std::vector<double> json_number_list(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key) || !j.at(key).is_array())
        bad(ctx + ": missing array field \"" + key + "\"");
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) bad(ctx + ": \"" + key + "\" must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::vector<double>> json_number_matrix(const json& j, const char* key,
                                                    const std::string& ctx) {
    if (!j.contains(key) || !j.at(key).is_array())
        bad(ctx + ": missing array field \"" + key + "\"");
    std::vector<std::vector<double>> out;
    for (const auto& row : j.at(key)) {
        if (!row.is_array()) bad(ctx + ": \"" + key + "\" must be an array of rows");
        out.emplace_back();
        for (const auto& v : row) {
            if (!v.is_number()) bad(ctx + ": \"" + key + "\" must hold numbers");
            out.back().push_back(v.get<double>());
        }
    }
    return out;
}

BlockSizes block_sizes_from_json(const json& j, const std::string& ctx) {
    if (!j.is_object()) bad(ctx + ": block sizes must be an object");
    if (j.contains("prefix"))
        return BlockSizes::with_geometric_tail(json_number_list(j, "prefix", ctx),
                                               json_number(j, "alpha", ctx));
    if (j.contains("alpha")) return BlockSizes::geometric(json_number(j, "alpha", ctx));
    if (j.contains("sizes")) return BlockSizes::explicit_sizes(json_number_list(j, "sizes", ctx));
    bad(ctx + ": block sizes need \"alpha\", \"sizes\", or \"prefix\"+\"alpha\"");
}

json block_sizes_to_json(const BlockSizes& b) {
    json j = json::object();
    if (b.has_tail()) {
        if (!b.prefix().empty()) j["prefix"] = b.prefix();
        j["alpha"] = b.tail_alpha();
    } else {
        j["sizes"] = b.prefix();
    }
    return j;
}

Permuton permuton_from_json(const json& j);
Graphon graphon_from_json(const json& j);

Permuton permuton_from_json(const json& j) {
    if (!j.is_object() || !j.contains("form") || !j.at("form").is_string())
        bad("permuton object needs a string \"form\" tag");
    const std::string form = j.at("form").get<std::string>();
    if (form == "uniform") return Permuton::uniform();
    if (form == "monotone-geometric")
        return Permuton::monotone_geometric(json_number(j, "alpha", form));
    if (form == "square-geometric")
        return Permuton::square_geometric(json_number(j, "alpha", form));
    if (form == "step-matrix")
        return Permuton::step_matrix(json_number_list(j, "z", form),
                                     json_number_matrix(j, "mass", form));
    if (form == "mixture") {
        if (!j.contains("pieces") || !j.at("pieces").is_array())
            bad("mixture: missing array field \"pieces\"");
        std::vector<PolygonPiece> pieces;
        for (const auto& pj : j.at("pieces")) {
            PolygonPiece piece;
            piece.weight = json_number(pj, "weight", "mixture piece");
            for (const auto& row : json_number_matrix(pj, "vertices", "mixture piece")) {
                if (row.size() != 2) bad("mixture piece: vertices must be [x,y] pairs");
                piece.vertices.push_back({row[0], row[1]});
            }
            pieces.push_back(std::move(piece));
        }
        return Permuton::mixture(std::move(pieces));
    }
    bad("unknown permuton form \"" + form + "\"");
}

Graphon graphon_from_json(const json& j) {
    if (!j.is_object() || !j.contains("form") || !j.at("form").is_string())
        bad("graphon object needs a string \"form\" tag");
    const std::string form = j.at("form").get<std::string>();
    if (form == "constant") return Graphon::constant(json_number(j, "rho", form));
    if (form == "step")
        return Graphon::step(json_number_list(j, "widths", form),
                             json_number_matrix(j, "values", form));
    if (form == "clique-blocks") {
        if (!j.contains("sizes")) bad("clique-blocks: missing field \"sizes\"");
        return Graphon::clique_blocks(block_sizes_from_json(j.at("sizes"), form));
    }
    if (form == "planted") {
        if (!j.contains("base")) bad("planted: missing field \"base\"");
        if (!j.contains("sizes")) bad("planted: missing field \"sizes\"");
        return Graphon::planted(graphon_from_json(j.at("base")),
                                block_sizes_from_json(j.at("sizes"), form));
    }
    if (form == "permuton-induced") {
        if (!j.contains("permuton")) bad("permuton-induced: missing field \"permuton\"");
        return Graphon::permuton_induced(permuton_from_json(j.at("permuton")));
    }
    bad("unknown graphon form \"" + form + "\"");
}

bool is_permuton_form(const std::string& form) {
    return form == "uniform" || form == "monotone-geometric" || form == "square-geometric" ||
           form == "step-matrix" || form == "mixture";
}

json permuton_to_json(const Permuton& mu);

json graphon_to_json(const Graphon& w) {
    json j = json::object();
    if (const auto* c = w.get_if<Graphon::Constant>()) {
        j["form"] = "constant";
        j["rho"] = c->rho;
    } else if (const auto* s = w.get_if<Graphon::Step>()) {
        j["form"] = "step";
        j["widths"] = s->widths;
        j["values"] = s->values;
    } else if (const auto* c = w.get_if<Graphon::CliqueBlocks>()) {
        j["form"] = "clique-blocks";
        j["sizes"] = block_sizes_to_json(c->sizes);
    } else if (const auto* p = w.get_if<Graphon::Planted>()) {
        j["form"] = "planted";
        j["base"] = graphon_to_json(*p->base);
        j["sizes"] = block_sizes_to_json(p->sizes);
    } else {
        const auto* i = w.get_if<Graphon::PermutonInduced>();
        j["form"] = "permuton-induced";
        j["permuton"] = permuton_to_json(i->mu);
    }
    return j;
}

json permuton_to_json(const Permuton& mu) {
    json j = json::object();
    if (mu.get_if<Permuton::Uniform>()) {
        j["form"] = "uniform";
    } else if (const auto* m = mu.get_if<Permuton::MonotoneGeometric>()) {
        j["form"] = "monotone-geometric";
        j["alpha"] = m->alpha;
    } else if (const auto* s = mu.get_if<Permuton::SquareGeometric>()) {
        j["form"] = "square-geometric";
        j["alpha"] = s->alpha;
    } else if (const auto* s = mu.get_if<Permuton::StepMatrix>()) {
        j["form"] = "step-matrix";
        j["z"] = s->z;
        j["mass"] = s->mass;
    } else {
        const auto* m = mu.get_if<Permuton::Mixture>();
        j["form"] = "mixture";
        json pieces = json::array();
        for (const auto& piece : m->pieces) {
            json vertices = json::array();
            for (const auto& v : piece.vertices) vertices.push_back({v.x, v.y});
            pieces.push_back({{"vertices", vertices}, {"weight", piece.weight}});
        }
        j["pieces"] = pieces;
    }
    return j;
}

// key=value pairs, comma separated, keys required exactly once each.
std::vector<std::pair<std::string, double>> parse_kv(const std::string& text,
                                                     const std::string& ctx) {
    std::vector<std::pair<std::string, double>> out;
    std::istringstream in(text);
    std::string field;
    while (std::getline(in, field, ',')) {
        auto eq = field.find('=');
        if (eq == std::string::npos || eq == 0)
            bad("descriptor " + ctx + ": expected key=value, got '" + field + "'");
        out.emplace_back(field.substr(0, eq), parse_number(field.substr(eq + 1), ctx));
    }
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("descriptor file '" + path + "' is not readable");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        bad("descriptor file '" + path + "': " + e.what());
    }
}

}  // namespace

LimitObject parse_limit_object(const std::string& descriptor) {
    if (descriptor == "uniform") return Permuton::uniform();
    const auto colon = descriptor.find(':');
    const std::string head = descriptor.substr(0, colon);
    const std::string rest =
        colon == std::string::npos ? std::string() : descriptor.substr(colon + 1);
    if (colon != std::string::npos) {
        if (head == "monotone") return Permuton::monotone_geometric(parse_number(rest, head));
        if (head == "square") return Permuton::square_geometric(parse_number(rest, head));
        if (head == "constant") return Graphon::constant(parse_number(rest, head));
        if (head == "cliqueblocks")
            return Graphon::clique_blocks(BlockSizes::geometric(parse_number(rest, head)));
        if (head == "planted") {
            double rho = 0.0, alpha = 0.0;
            bool saw_rho = false, saw_alpha = false;
            for (const auto& [key, value] : parse_kv(rest, head)) {
                if (key == "rho" && !saw_rho) {
                    rho = value;
                    saw_rho = true;
                } else if (key == "alpha" && !saw_alpha) {
                    alpha = value;
                    saw_alpha = true;
                } else {
                    bad("descriptor planted: unexpected key '" + key + "'");
                }
            }
            if (!saw_rho || !saw_alpha) bad("descriptor planted: needs rho=R,alpha=A");
            return Graphon::planted(Graphon::constant(rho), BlockSizes::geometric(alpha));
        }
        if (head == "induced") {
            auto inner = parse_limit_object(rest);
            if (const auto* mu = std::get_if<Permuton>(&inner))
                return Graphon::permuton_induced(*mu);
            bad("descriptor induced: '" + rest + "' is not a permuton");
        }
    }
    if (std::filesystem::exists(descriptor)) {
        const json j = load_json_file(descriptor);
        if (j.is_object() && j.contains("form") && j.at("form").is_string() &&
            is_permuton_form(j.at("form").get<std::string>()))
            return permuton_from_json(j);
        return graphon_from_json(j);
    }
    bad("unknown descriptor '" + descriptor +
        "': expected an inline shorthand (uniform, monotone:A, square:A, constant:R, "
        "cliqueblocks:A, planted:rho=R,alpha=A, induced:<permuton>) or a path to a JSON "
        "object file");
}

Permuton parse_permuton(const std::string& descriptor) {
    auto object = parse_limit_object(descriptor);
    if (auto* mu = std::get_if<Permuton>(&object)) return std::move(*mu);
    bad("descriptor '" + descriptor + "' names a graphon where a permuton is required");
}

Graphon parse_graphon(const std::string& descriptor) {
    auto object = parse_limit_object(descriptor);
    if (auto* w = std::get_if<Graphon>(&object)) return std::move(*w);
    bad("descriptor '" + descriptor + "' names a permuton where a graphon is required");
}

std::string permuton_json(const Permuton& mu) { return permuton_to_json(mu).dump(); }

std::string graphon_json(const Graphon& w) { return graphon_to_json(w).dump(); }

std::string limit_object_json(const LimitObject& object) {
    if (const auto* mu = std::get_if<Permuton>(&object)) return permuton_json(*mu);
    return graphon_json(std::get<Graphon>(object));
}

}  // namespace permlim
