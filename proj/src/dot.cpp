#include "ripsbox/dot.hpp"

#include <json.hpp>

#include <sstream>

namespace ripsbox {

std::string export_dot(const BandComplex& Y) {
    std::ostringstream os;
    os << "graph bandcomplex {\n";
    os << "  node [shape=box];\n";
    auto blocks = compute_blocks(Y);
    auto block_of = [&](const Segment& arc) {
        for (size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].edge == arc.edge && blocks[i].start <= arc.start &&
                arc.end() <= blocks[i].end)
                return static_cast<int>(i);
        return -1;
    };
    for (size_t i = 0; i < blocks.size(); ++i) {
        os << "  b" << i << " [label=\"e" << blocks[i].edge << " ["
           << blocks[i].start.to_double() << "," << blocks[i].end.to_double() << "]\"];\n";
    }
    std::set<EdgeId> naked;
    for (const auto& e : Y.graph.edges()) naked.insert(e.id);
    for (const auto& b : blocks) naked.erase(b.edge);
    for (EdgeId e : naked)
        os << "  e" << e << " [label=\"naked e" << e << "\", shape=ellipse];\n";
    for (const auto& gb : compute_generalized_bands(Y)) {
        int u = block_of(gb.bottom), v = block_of(gb.top);
        os << "  b" << u << " -- b" << v << " [label=\"B" << gb.key() << " l=" << gb.length()
           << " w=" << gb.width().to_double() << "\"];\n";
    }
    for (const auto& [id, b] : Y.bands) {
        Weight w = band_weight(b);
        if (w == Weight::One) continue;
        int u = block_of(b.bottom), v = block_of(b.top);
        os << "  b" << u << " -- b" << v << " [style=" << (w == Weight::Zero ? "dotted" : "dashed")
           << ", label=\"B" << id << (w == Weight::Zero ? " w0" : " w1/2") << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string export_stats(const BandComplex& Y) {
    nlohmann::ordered_json j;
    j["edges"] = Y.graph.edges().size();
    j["bands"] = Y.bands.size();
    j["cells"] = Y.cells.size();
    j["blocks"] = compute_blocks(Y).size();
    j["complexity"] = complexity(Y).str();
    j["generalized_bands"] = compute_generalized_bands(Y).size();
    int w0 = 0, wh = 0, w1 = 0;
    for (const auto& [id, b] : Y.bands) {
        switch (band_weight(b)) {
            case Weight::Zero: ++w0; break;
            case Weight::Half: ++wh; break;
            case Weight::One: ++w1; break;
        }
    }
    j["weight0"] = w0;
    j["weight_half"] = wh;
    j["weight1"] = w1;
    double maxw = 0;
    for (const auto& [id, b] : Y.bands)
        if (band_weight(b) != Weight::Zero) maxw = std::max(maxw, b.width().to_double());
    j["max_width_approx"] = maxw;
    j["components"] = components(Y).size();
    Scalar tot = Y.graph.total_length();
    j["total_length_approx"] = tot.to_double();
    return j.dump(1) + "\n";
}

}  // namespace ripsbox
