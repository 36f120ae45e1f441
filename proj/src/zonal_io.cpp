#include "hls/zonal_io.hpp"

#include "hls/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace hls {

std::string zonal_to_json(const ZonalFn& f, bool with_coeffs)
{
    nlohmann::ordered_json doc;
    doc["dim"] = f.dim();
    doc["nodes"] = f.nodes();
    doc["values"] = f.values();
    if (with_coeffs) {
        doc["coeffs"] = f.coeffs();
    }
    return doc.dump() + "\n";
}

ZonalFn zonal_from_json(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("zonal json: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("nodes") || !doc.contains("values")) {
        throw UsageError("zonal json: expected an object with dim, nodes and values");
    }
    int dim = 0;
    std::vector<double> nodes;
    std::vector<double> values;
    try {
        dim = doc.at("dim").get<int>();
        nodes = doc.at("nodes").get<std::vector<double>>();
        values = doc.at("values").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("zonal json: ") + e.what());
    }
    if (dim < 1) {
        throw UsageError("zonal json: dim must be at least 1");
    }
    if (nodes.size() != values.size() || nodes.size() < 2) {
        throw UsageError("zonal json: nodes and values must have the same length (at least 2)");
    }
    auto basis = ZonalBasis::get(dim, static_cast<int>(nodes.size()));
    const auto& canonical = basis->rule().nodes;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (!(std::abs(nodes[k] - canonical[k]) <= 1e-13)) {
            throw UsageError("zonal json: nodes are not the Gauss rule for dim " + std::to_string(dim) + " with "
                             + std::to_string(nodes.size()) + " nodes");
        }
    }
    return ZonalFn(std::move(basis), std::move(values));
}

ZonalFn read_zonal_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return zonal_from_json(buf.str());
}

void write_zonal_file(const std::string& path, const ZonalFn& f, bool with_coeffs)
{
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write " + path);
    }
    out << zonal_to_json(f, with_coeffs);
}

} // namespace hls
