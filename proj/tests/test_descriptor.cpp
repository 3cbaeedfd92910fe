#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "permlim/descriptor.hpp"

using namespace permlim;

namespace {

struct TempJson {
    std::filesystem::path path;

    TempJson(const std::string& stem, const std::string& text) {
        path = std::filesystem::temp_directory_path() / (stem + ".json");
        std::ofstream out(path);
        out << text;
    }
    ~TempJson() {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("inline shorthands parse to the right forms") {
    CHECK(parse_permuton("uniform").get_if<Permuton::Uniform>() != nullptr);

    const auto m = parse_permuton("monotone:0.5");
    REQUIRE(m.get_if<Permuton::MonotoneGeometric>() != nullptr);
    CHECK(m.get_if<Permuton::MonotoneGeometric>()->alpha == 0.5);

    const auto s = parse_permuton("square:0.25");
    REQUIRE(s.get_if<Permuton::SquareGeometric>() != nullptr);
    CHECK(s.get_if<Permuton::SquareGeometric>()->alpha == 0.25);

    const auto c = parse_graphon("constant:0.7");
    REQUIRE(c.get_if<Graphon::Constant>() != nullptr);
    CHECK(c.get_if<Graphon::Constant>()->rho == 0.7);

    const auto cb = parse_graphon("cliqueblocks:0.5");
    REQUIRE(cb.get_if<Graphon::CliqueBlocks>() != nullptr);
    CHECK(cb.get_if<Graphon::CliqueBlocks>()->sizes == BlockSizes::geometric(0.5));

    for (const char* text : {"planted:rho=0.5,alpha=0.25", "planted:alpha=0.25,rho=0.5"}) {
        const auto p = parse_graphon(text);
        REQUIRE(p.get_if<Graphon::Planted>() != nullptr);
        const auto* form = p.get_if<Graphon::Planted>();
        REQUIRE(form->base->get_if<Graphon::Constant>() != nullptr);
        CHECK(form->base->get_if<Graphon::Constant>()->rho == 0.5);
        CHECK(form->sizes == BlockSizes::geometric(0.25));
    }

    const auto ind = parse_graphon("induced:monotone:0.5");
    REQUIRE(ind.get_if<Graphon::PermutonInduced>() != nullptr);
    CHECK(ind.get_if<Graphon::PermutonInduced>()->mu.get_if<Permuton::MonotoneGeometric>() !=
          nullptr);
}

TEST_CASE("typed entry points reject the other kind") {
    CHECK_THROWS_AS(parse_permuton("constant:0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graphon("uniform"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graphon("monotone:0.5"), std::invalid_argument);
}

TEST_CASE("malformed descriptors fail with a schema pointer") {
    for (const char* text :
         {"monot:0.5", "monotone:abc", "monotone:0.5x", "planted:rho=0.5",
          "planted:rho=0.5,alpha=0.2,rho=0.1", "planted:rho=0.5,beta=0.2",
          "induced:constant:0.5", "no-such-file.json", ""}) {
        CAPTURE(text);
        CHECK_THROWS_AS(parse_limit_object(text), std::invalid_argument);
    }
    try {
        parse_limit_object("monot:0.5");
        REQUIRE(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("docs/schema.md") != std::string::npos);
    }
    // out-of-range parameters are caught by the object factories
    CHECK_THROWS_AS(parse_permuton("monotone:1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graphon("constant:-0.1"), std::invalid_argument);
}

TEST_CASE("json files cover every form") {
    TempJson mono("permlim_mono", R"({"form":"monotone-geometric","alpha":0.5})");
    const auto m = parse_permuton(mono.str());
    REQUIRE(m.get_if<Permuton::MonotoneGeometric>() != nullptr);
    CHECK(m.get_if<Permuton::MonotoneGeometric>()->alpha == 0.5);

    TempJson step("permlim_stepm", R"({
        "form": "step-matrix",
        "z": [0.3333333333333333, 0.3333333333333333, 0.3333333333333333],
        "mass": [[0.0, 0.0, 0.3333333333333333],
                 [0.2222222222222222, 0.1111111111111111, 0.0],
                 [0.1111111111111111, 0.2222222222222222, 0.0]]})");
    const auto sm = parse_permuton(step.str());
    REQUIRE(sm.get_if<Permuton::StepMatrix>() != nullptr);
    CHECK(sm.get_if<Permuton::StepMatrix>()->z.size() == 3);

    TempJson mix("permlim_mix", R"({
        "form": "mixture",
        "pieces": [{"vertices": [[0.0, 0.0], [1.0, 1.0]], "weight": 1.0}]})");
    const auto mx = parse_permuton(mix.str());
    REQUIRE(mx.get_if<Permuton::Mixture>() != nullptr);
    CHECK(mx.get_if<Permuton::Mixture>()->pieces.size() == 1);

    TempJson cb("permlim_cb", R"({"form":"clique-blocks","sizes":{"prefix":[0.5],"alpha":0.5}})");
    const auto w = parse_graphon(cb.str());
    REQUIRE(w.get_if<Graphon::CliqueBlocks>() != nullptr);
    CHECK(w.get_if<Graphon::CliqueBlocks>()->sizes ==
          BlockSizes::with_geometric_tail({0.5}, 0.5));

    TempJson planted("permlim_planted", R"({
        "form": "planted",
        "base": {"form": "constant", "rho": 0.25},
        "sizes": {"sizes": [0.5, 0.3, 0.2]}})");
    const auto p = parse_graphon(planted.str());
    REQUIRE(p.get_if<Graphon::Planted>() != nullptr);
    CHECK(p.get_if<Graphon::Planted>()->base->get_if<Graphon::Constant>()->rho == 0.25);

    TempJson induced("permlim_induced", R"({
        "form": "permuton-induced",
        "permuton": {"form": "square-geometric", "alpha": 0.5}})");
    const auto iw = parse_graphon(induced.str());
    REQUIRE(iw.get_if<Graphon::PermutonInduced>() != nullptr);
    CHECK(iw.get_if<Graphon::PermutonInduced>()->mu.get_if<Permuton::SquareGeometric>() !=
          nullptr);

    TempJson stepg("permlim_stepg", R"({
        "form": "step",
        "widths": [0.5, 0.5],
        "values": [[0.0, 1.0], [1.0, 0.0]]})");
    const auto sg = parse_graphon(stepg.str());
    REQUIRE(sg.get_if<Graphon::Step>() != nullptr);
    CHECK(sg.get_if<Graphon::Step>()->values[0][1] == 1.0);
}

TEST_CASE("malformed json files are rejected") {
    TempJson badform("permlim_badform", R"({"form":"nope"})");
    CHECK_THROWS_AS(parse_limit_object(badform.str()), std::invalid_argument);

    TempJson noform("permlim_noform", R"({"alpha":0.5})");
    CHECK_THROWS_AS(parse_limit_object(noform.str()), std::invalid_argument);

    TempJson garbage("permlim_garbage", "{not json");
    CHECK_THROWS_AS(parse_limit_object(garbage.str()), std::invalid_argument);

    TempJson missing("permlim_missing", R"({"form":"monotone-geometric"})");
    CHECK_THROWS_AS(parse_limit_object(missing.str()), std::invalid_argument);

    TempJson strnum("permlim_strnum", R"({"form":"constant","rho":"0.5"})");
    CHECK_THROWS_AS(parse_limit_object(strnum.str()), std::invalid_argument);
}

TEST_CASE("canonical json round-trips through the file parser") {
    const std::vector<std::string> descriptors = {
        "uniform",          "monotone:0.3", "square:0.7", "constant:0.37",
        "cliqueblocks:0.5", "planted:rho=0.5,alpha=0.25", "induced:monotone:0.5"};
    int i = 0;
    for (const auto& text : descriptors) {
        CAPTURE(text);
        const auto object = parse_limit_object(text);
        const std::string json = limit_object_json(object);
        TempJson file("permlim_rt" + std::to_string(i++), json);
        const auto back = parse_limit_object(file.str());
        CHECK(limit_object_json(back) == json);
        CHECK(back.index() == object.index());
    }

    const auto sm = Permuton::step_matrix(
        {1.0 / 3, 1.0 / 3, 1.0 / 3},
        {{0.0, 0.0, 1.0 / 3}, {2.0 / 9, 1.0 / 9, 0.0}, {1.0 / 9, 2.0 / 9, 0.0}});
    TempJson smf("permlim_rt_sm", permuton_json(sm));
    const auto smb = parse_permuton(smf.str());
    CHECK(permuton_json(smb) == permuton_json(sm));

    const auto mixed = Permuton::mixture({{{{0.0, 0.0}, {1.0, 1.0}}, 1.0}});
    TempJson mixf("permlim_rt_mix", permuton_json(mixed));
    CHECK(permuton_json(parse_permuton(mixf.str())) == permuton_json(mixed));

    const auto stepg = Graphon::step({0.5, 0.5}, {{0.0, 1.0}, {1.0, 0.0}});
    TempJson stepf("permlim_rt_step", graphon_json(stepg));
    CHECK(graphon_json(parse_graphon(stepf.str())) == graphon_json(stepg));

    const auto explicit_cb = Graphon::clique_blocks(BlockSizes::explicit_sizes({0.5, 0.3, 0.2}));
    TempJson cbf("permlim_rt_cb", graphon_json(explicit_cb));
    CHECK(graphon_json(parse_graphon(cbf.str())) == graphon_json(explicit_cb));
}

TEST_CASE("canonical json strings are frozen") {
    CHECK(limit_object_json(parse_limit_object("uniform")) == R"({"form":"uniform"})");
    CHECK(limit_object_json(parse_limit_object("monotone:0.5")) ==
          R"({"alpha":0.5,"form":"monotone-geometric"})");
    CHECK(limit_object_json(parse_limit_object("planted:rho=0.5,alpha=0.5")) ==
          R"({"base":{"form":"constant","rho":0.5},"form":"planted","sizes":{"alpha":0.5}})");
    CHECK(limit_object_json(parse_limit_object("cliqueblocks:0.25")) ==
          R"({"form":"clique-blocks","sizes":{"alpha":0.25}})");
}
