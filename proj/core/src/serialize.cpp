#include "ridet/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ridet/errors.hpp"

namespace ridet {

namespace {

using nlohmann::json;

json parse_json(std::string_view text, const char* what) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw ParseError(std::string("invalid JSON in ") + what);
    return doc;
}

std::vector<double> number_array(const json& doc, const char* key, std::size_t expected) {
    if (!doc.contains(key) || !doc[key].is_array()) {
        throw ParseError(std::string("missing array field '") + key + "'");
    }
    std::vector<double> out;
    out.reserve(doc[key].size());
    for (const auto& v : doc[key]) {
        if (!v.is_number()) throw ParseError(std::string("non-numeric entry in '") + key + "'");
        out.push_back(v.get<double>());
    }
    if (out.size() != expected) {
        throw ParseError(std::string("field '") + key + "' has " + std::to_string(out.size()) +
                         " entries, expected " + std::to_string(expected));
    }
    return out;
}

double number_field(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number()) {
        throw ParseError(std::string("missing numeric field '") + key + "'");
    }
    return doc[key].get<double>();
}

}  // namespace

std::string network_to_json(const ElmanNetwork& net) {
    json doc;
    doc["topology"] = {{"inputs", net.topology.inputs},
                       {"hidden", net.topology.hidden},
                       {"outputs", net.topology.outputs},
                       {"unfold_steps", net.topology.unfold_steps}};
    doc["seed"] = net.seed;
    doc["initial_state"] = net.initial_state;
    doc["input_to_hidden"] = net.input_to_hidden;    // hidden x inputs, row-major
    doc["context_to_hidden"] = net.context_to_hidden;  // hidden x hidden, row-major
    doc["hidden_to_output"] = net.hidden_to_output;
    doc["hidden_bias"] = net.hidden_bias;
    doc["output_bias"] = net.output_bias;
    return doc.dump(2) + "\n";
}

ElmanNetwork network_from_json(std::string_view text) {
    const json doc = parse_json(text, "network document");
    if (!doc.contains("topology") || !doc["topology"].is_object()) {
        throw ParseError("missing object field 'topology'");
    }
    const json& topo = doc["topology"];

    ElmanNetwork net;
    net.topology.inputs = int(number_field(topo, "inputs"));
    net.topology.hidden = int(number_field(topo, "hidden"));
    net.topology.outputs = int(number_field(topo, "outputs"));
    net.topology.unfold_steps = int(number_field(topo, "unfold_steps"));
    try {
        net.topology.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad topology: ") + e.what());
    }

    if (doc.contains("seed")) net.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("initial_state")) net.initial_state = number_field(doc, "initial_state");

    const std::size_t J = std::size_t(net.topology.inputs);
    const std::size_t K = std::size_t(net.topology.hidden);
    net.input_to_hidden = number_array(doc, "input_to_hidden", K * J);
    net.context_to_hidden = number_array(doc, "context_to_hidden", K * K);
    net.hidden_to_output = number_array(doc, "hidden_to_output", K);
    net.hidden_bias = number_array(doc, "hidden_bias", K);
    net.output_bias = number_field(doc, "output_bias");
    return net;
}

std::string bounds_to_json(const NormalizationBounds& bounds) {
    json doc;
    doc["min_kt"] = bounds.min_kt;
    doc["max_kt"] = bounds.max_kt;
    return doc.dump(2) + "\n";
}

NormalizationBounds bounds_from_json(std::string_view text) {
    const json doc = parse_json(text, "bounds document");
    NormalizationBounds bounds;
    bounds.min_kt = number_field(doc, "min_kt");
    bounds.max_kt = number_field(doc, "max_kt");
    if (!(bounds.max_kt > bounds.min_kt)) {
        throw ParseError("bounds must satisfy max_kt > min_kt");
    }
    return bounds;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out.write(contents.data(), std::streamsize(contents.size()));
    if (!out) throw std::runtime_error("short write: " + path.string());
}

}  // namespace ridet
