#include "ripsbox/io.hpp"

#include <fstream>
#include <sstream>

namespace ripsbox {

namespace {

Json bigint_to_json(const BigInt& v) {
    static const BigInt lo = BigInt(std::numeric_limits<long long>::min());
    static const BigInt hi = BigInt(std::numeric_limits<long long>::max());
    if (v >= lo && v <= hi) return Json(v.convert_to<long long>());
    return Json(v.str());
}

BigInt bigint_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw IoError("expected integer or string for big integer");
}

Json rat_to_json(const Rat& r) { return Json::array({bigint_to_json(r.num()), bigint_to_json(r.den())}); }

Rat rat_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw IoError("rational must be [num,den]");
    return Rat(bigint_from_json(j[0]), bigint_from_json(j[1]));
}

}  // namespace

Json scalar_to_json(const Scalar& s) {
    if (s.is_rational()) return Json{{"rat", rat_to_json(s.rat())}};
    return Json{{"quad", Json{{"rat", rat_to_json(s.rat())},
                              {"coef", rat_to_json(s.coef())},
                              {"d", s.disc()}}}};
}

Scalar scalar_from_json(const Json& j) {
    if (j.contains("rat")) return Scalar(rat_from_json(j["rat"]));
    if (j.contains("quad")) {
        const Json& q = j["quad"];
        return Scalar(rat_from_json(q.at("rat")), rat_from_json(q.at("coef")),
                      q.at("d").get<std::int64_t>());
    }
    throw IoError("scalar must be {rat:..} or {quad:..}");
}

Json segment_to_json(const Segment& s) {
    return Json{{"edge", s.edge},
                {"start", scalar_to_json(s.start)},
                {"len", scalar_to_json(s.len)},
                {"dir", s.fwd}};
}

Segment segment_from_json(const Json& j) {
    return Segment{j.at("edge").get<int>(), scalar_from_json(j.at("start")),
                   scalar_from_json(j.at("len")), j.at("dir").get<bool>()};
}

Json pt_to_json(const Pt& p) {
    return Json{{"edge", p.edge}, {"off", scalar_to_json(p.off)}};
}

Pt pt_from_json(const Json& j) {
    return Pt{j.at("edge").get<int>(), scalar_from_json(j.at("off"))};
}

Json region_to_json(const Region& r) {
    if (r.pt) return Json{{"pt", pt_to_json(*r.pt)}};
    Json steps = Json::array();
    for (const auto& st : r.path->steps)
        steps.push_back(Json{{"band", st.band}, {"enter", scalar_to_json(st.enter)}, {"up", st.up}});
    return Json{{"path", Json{{"start", pt_to_json(r.path->start)}, {"steps", steps}}}};
}

Region region_from_json(const Json& j) {
    if (j.contains("pt")) return Region::point(pt_from_json(j["pt"]));
    if (j.contains("path")) {
        LeafPath lp;
        lp.start = pt_from_json(j["path"].at("start"));
        for (const auto& st : j["path"].at("steps")) {
            lp.steps.push_back(PathStep{st.at("band").get<int>(),
                                        scalar_from_json(st.at("enter")),
                                        st.at("up").get<bool>()});
        }
        return Region::leaf(std::move(lp));
    }
    throw IoError("region must be {pt:..} or {path:..}");
}

Json complex_to_json(const BandComplex& Y) {
    Json edges = Json::array();
    for (const auto& e : Y.graph.edges())
        edges.push_back(Json{{"id", e.id}, {"len", scalar_to_json(e.len)}});
    Json bands = Json::array();
    for (const auto& [id, b] : Y.bands) {
        bands.push_back(Json{{"id", id},
                             {"bottom", segment_to_json(b.bottom)},
                             {"top", segment_to_json(b.top)},
                             {"orient", b.orient}});
    }
    Json cells = Json::array();
    for (const auto& [id, c] : Y.cells) {
        Json regions = Json::array();
        for (const auto& r : c.regions) regions.push_back(region_to_json(r));
        cells.push_back(
            Json{{"id", id}, {"kind", cell_kind_name(c.kind)}, {"regions", regions}});
    }
    Json out{{"d", Y.d}, {"edges", edges}, {"bands", bands}, {"cells", cells}};
    if (Y.graph.glued()) {
        Json glue = Json::array();
        for (const auto& cls : Y.graph.gluings()) {
            Json c = Json::array();
            for (const auto& m : cls) c.push_back(Json{{"edge", m.edge}, {"side", m.side}});
            glue.push_back(c);
        }
        out["gluings"] = glue;
    }
    if (Y.a1_suspended) out["a1_suspended"] = true;
    return out;
}

BandComplex complex_from_json(const Json& j) {
    BandComplex Y;
    Y.d = j.value("d", std::int64_t{0});
    int max_edge = -1;
    for (const auto& e : j.at("edges")) {
        EdgeId want = e.at("id").get<int>();
        // preserve explicit ids and order
        while (Y.graph.next_edge_id() < want) Y.graph.set_next_edge_id(want);
        EdgeId got = Y.graph.add_edge(scalar_from_json(e.at("len")));
        if (got != want) throw IoError("edge ids must be increasing in file order");
        max_edge = std::max(max_edge, got);
    }
    for (const auto& b : j.at("bands")) {
        Band nb;
        nb.id = b.at("id").get<int>();
        nb.bottom = segment_from_json(b.at("bottom"));
        nb.top = segment_from_json(b.at("top"));
        nb.orient = b.at("orient").get<bool>();
        Y.bands[nb.id] = nb;
        Y.next_band_id = std::max(Y.next_band_id, nb.id + 1);
    }
    for (const auto& c : j.value("cells", Json::array())) {
        CellEntry ce;
        ce.id = c.at("id").get<int>();
        auto k = cell_kind_from(c.at("kind").get<std::string>());
        if (!k) throw IoError("unknown cell kind");
        ce.kind = *k;
        for (const auto& r : c.at("regions")) ce.regions.push_back(region_from_json(r));
        Y.cells[ce.id] = ce;
        Y.next_cell_id = std::max(Y.next_cell_id, ce.id + 1);
    }
    if (j.contains("gluings")) {
        for (const auto& cls : j["gluings"]) {
            std::vector<RealGraph::End> ends;
            for (const auto& m : cls)
                ends.push_back({m.at("edge").get<int>(), m.at("side").get<int>()});
            for (size_t i = 1; i < ends.size(); ++i) Y.graph.glue(ends[0], ends[i]);
        }
    }
    Y.a1_suspended = j.value("a1_suspended", false);
    return Y;
}

std::string complex_to_string(const BandComplex& Y) { return complex_to_json(Y).dump(1) + "\n"; }

BandComplex complex_from_string(const std::string& text) {
    return complex_from_json(Json::parse(text));
}

void save_complex(const BandComplex& Y, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << complex_to_string(Y);
}

BandComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return complex_from_string(ss.str());
    } catch (const Json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// move records

namespace {

Json reloc_to_json(const Relocation& r) {
    Json maps = Json::array();
    for (const auto& m : r.maps) {
        maps.push_back(Json{{"src", m.src},
                            {"s0", scalar_to_json(m.s0)},
                            {"s1", scalar_to_json(m.s1)},
                            {"dst", m.dst},
                            {"d0", scalar_to_json(m.d0)},
                            {"flip", m.flip}});
    }
    return maps;
}

Relocation reloc_from_json(const Json& j) {
    Relocation r;
    for (const auto& m : j) {
        r.maps.push_back(SegMap{m.at("src").get<int>(), scalar_from_json(m.at("s0")),
                                scalar_from_json(m.at("s1")), m.at("dst").get<int>(),
                                scalar_from_json(m.at("d0")), m.at("flip").get<bool>()});
    }
    return r;
}

}  // namespace

Json record_to_json(const MoveRecord& r) {
    Json j{{"kind", move_kind_name(r.kind)}};
    if (r.band >= 0) j["band"] = r.band;
    if (r.band2 >= 0) j["band2"] = r.band2;
    if (r.side) j["side"] = r.side;
    if (r.side2) j["side2"] = r.side2;
    if (r.pt.edge >= 0) j["pt"] = pt_to_json(r.pt);
    if (!r.x0.is_zero()) j["x0"] = scalar_to_json(r.x0);
    if (!r.x1.is_zero()) j["x1"] = scalar_to_json(r.x1);
    if (r.seg.edge >= 0) j["seg"] = segment_to_json(r.seg);
    if (r.seg2.edge >= 0) j["seg2"] = segment_to_json(r.seg2);
    if (r.flag) j["flag"] = true;
    if (r.cell_kind) j["cell_kind"] = r.cell_kind;
    if (!r.regions.empty()) {
        Json regs = Json::array();
        for (const auto& reg : r.regions) regs.push_back(region_to_json(reg));
        j["regions"] = regs;
    }
    if (!r.created.empty()) j["created"] = r.created;
    if (!r.destroyed.empty()) j["destroyed"] = r.destroyed;
    if (!r.reloc.identity()) j["reloc"] = reloc_to_json(r.reloc);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

MoveRecord record_from_json(const Json& j) {
    MoveRecord r;
    r.kind = move_kind_from(j.at("kind").get<std::string>());
    r.band = j.value("band", -1);
    r.band2 = j.value("band2", -1);
    r.side = j.value("side", 0);
    r.side2 = j.value("side2", 0);
    if (j.contains("pt")) r.pt = pt_from_json(j["pt"]);
    if (j.contains("x0")) r.x0 = scalar_from_json(j["x0"]);
    if (j.contains("x1")) r.x1 = scalar_from_json(j["x1"]);
    if (j.contains("seg")) r.seg = segment_from_json(j["seg"]);
    if (j.contains("seg2")) r.seg2 = segment_from_json(j["seg2"]);
    r.flag = j.value("flag", false);
    r.cell_kind = j.value("cell_kind", 0);
    if (j.contains("regions"))
        for (const auto& reg : j["regions"]) r.regions.push_back(region_from_json(reg));
    if (j.contains("created")) r.created = j["created"].get<std::vector<int>>();
    if (j.contains("destroyed")) r.destroyed = j["destroyed"].get<std::vector<int>>();
    if (j.contains("reloc")) r.reloc = reloc_from_json(j["reloc"]);
    r.note = j.value("note", "");
    return r;
}

// ---------------------------------------------------------------------------
// pairs

namespace {

Json morphism_to_json(const Morphism& m) {
    Json edges = Json::array();
    for (const auto& [src, em] : m.edges)
        edges.push_back(Json{{"src", src}, {"image", segment_to_json(em.image)}});
    Json bands = Json::array();
    for (const auto& [src, bm] : m.bands)
        bands.push_back(Json{{"src", src},
                             {"dst", bm.dst},
                             {"off", scalar_to_json(bm.off)},
                             {"flip", bm.flip}});
    Json cells = Json::array();
    for (const auto& [src, dst] : m.cells) cells.push_back(Json{{"src", src}, {"dst", dst}});
    return Json{{"edges", edges}, {"bands", bands}, {"cells", cells}};
}

Morphism morphism_from_json(const Json& j) {
    Morphism m;
    for (const auto& e : j.at("edges")) {
        EdgeMap em;
        em.src = e.at("src").get<int>();
        em.image = segment_from_json(e.at("image"));
        m.edges[em.src] = em;
    }
    for (const auto& b : j.at("bands")) {
        BandMap bm;
        bm.src = b.at("src").get<int>();
        bm.dst = b.at("dst").get<int>();
        bm.off = scalar_from_json(b.at("off"));
        bm.flip = b.at("flip").get<bool>();
        m.bands[bm.src] = bm;
    }
    for (const auto& c : j.value("cells", Json::array()))
        m.cells[c.at("src").get<int>()] = c.at("dst").get<int>();
    return m;
}

}  // namespace

Json pair_to_json(const PairState& P) {
    return Json{{"source", complex_to_json(P.src)},
                {"target", complex_to_json(P.dst)},
                {"morphism", morphism_to_json(P.iota)}};
}

PairState pair_from_json(const Json& j) {
    PairState P;
    P.src = complex_from_json(j.at("source"));
    P.dst = complex_from_json(j.at("target"));
    P.iota = morphism_from_json(j.at("morphism"));
    return P;
}

void save_pair(const PairState& P, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << pair_to_json(P).dump(1) << "\n";
}

PairState load_pair(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return pair_from_json(Json::parse(ss.str()));
    } catch (const Json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// traces

void write_trace_jsonl(const MachineTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    Json header{{"type", "header"}, {"records", trace.records.size()},
                {"stop", trace.stop_reason}};
    out << header.dump() << "\n";
    for (const auto& [step, rec] : trace.records) {
        Json j = record_to_json(rec);
        Json line{{"type", "move"}, {"step", step}};
        line.update(j);
        out << line.dump() << "\n";
    }
    for (const auto& st : trace.stats) {
        Json line{{"type", "stat"},
                  {"step", st.step},
                  {"process", st.process},
                  {"complexity", st.complexity_after.str()},
                  {"genbands", st.genband_count},
                  {"max_width", scalar_to_json(st.max_width)},
                  {"increasing", st.increasing},
                  {"delta_bands", st.delta_bands}};
        if (st.kind) line["collapse"] = collapse_kind_name(*st.kind);
        out << line.dump() << "\n";
    }
    for (const auto& rc : trace.recurrences) {
        Json line{{"type", "recurrence"},
                  {"first", rc.first_step},
                  {"second", rc.second_step},
                  {"process", rc.process},
                  {"ratio", scalar_to_json(rc.ratio)}};
        out << line.dump() << "\n";
    }
}

void write_pair_trace_jsonl(const PairTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    Json header{{"type", "header"}, {"records", trace.records.size()},
                {"process_iii_steps", trace.process_iii_steps}};
    out << header.dump() << "\n";
    for (const auto& [step, pr] : trace.records) {
        Json j = record_to_json(pr.rec);
        Json line{{"type", "move"}, {"step", step}, {"side", pr.on_src ? "source" : "target"}};
        line.update(j);
        out << line.dump() << "\n";
    }
    for (const auto& msg : trace.log) {
        out << Json{{"type", "log"}, {"msg", msg}}.dump() << "\n";
    }
}

BandComplex replay_trace(const BandComplex& initial, const std::string& trace_path) {
    std::ifstream in(trace_path);
    if (!in) throw IoError("cannot read " + trace_path);
    BandComplex Y = initial;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json j = Json::parse(line);
        if (j.value("type", "") != "move") continue;
        MoveRecord r = record_from_json(j);
        apply_record(Y, r);
    }
    return Y;
}

Json classification_to_json(const ClassificationReport& r) {
    return Json{{"component", r.component_index},
                {"verdict", verdict_name(r.verdict)},
                {"certified", r.certified},
                {"certificate", r.certificate},
                {"notes", r.notes}};
}

Json pair_report_to_json(const PairComponentReport& r) {
    Json j{{"dst_component", r.dst_component},
           {"src_components", r.src_components},
           {"dst_type", verdict_name(r.dst_type)},
           {"src_verdict", r.src_verdict},
           {"grade", grade_name(r.grade)},
           {"finite_cover", r.finite_cover},
           {"notes", r.notes}};
    if (r.cover_degree) j["degree"] = *r.cover_degree;
    if (!r.witness.empty()) j["witness"] = r.witness;
    return j;
}

}  // namespace ripsbox
