// Copyright 2026 The weaktraj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "weaktraj/cli/scenario_file.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace weaktraj::cli {
namespace {

using nlohmann::json;

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
        throw ParseError(where + ": expected an object");
    }
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            ok = ok || item.key() == a;
        }
        if (!ok) {
            throw ParseError(where + ": unknown key '" + item.key() + "'");
        }
    }
}

const json& need(const json& j, const std::string& where, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(where + ": missing key '" + key + "'");
    }
    return *it;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) {
        throw ParseError(where + ": expected a number");
    }
    return j.get<double>();
}

double number_or(const json& j, const std::string& where, const char* key, double fallback) {
    const auto it = j.find(key);
    return it == j.end() ? fallback : number(*it, where + "." + key);
}

std::size_t count(const json& j, const std::string& where) {
    if (!j.is_number_unsigned()) {
        throw ParseError(where + ": expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

std::string text(const json& j, const std::string& where) {
    if (!j.is_string()) {
        throw ParseError(where + ": expected a string");
    }
    return j.get<std::string>();
}

// A bare number is a real amplitude; [re, im] otherwise.
Complex complex_value(const json& j, const std::string& where) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError(where + ": expected a number or [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Complex> complex_list(const json& j, const std::string& where) {
    if (!j.is_array()) {
        throw ParseError(where + ": expected an array");
    }
    std::vector<Complex> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(complex_value(j[k], where + "[" + std::to_string(k) + "]"));
    }
    return out;
}

SampledState sampled(const json& j, const std::string& where) {
    only_keys(j, where, {"type", "start", "step", "values"});
    SampledState s;
    s.values = complex_list(need(j, where, "values"), where + ".values");
    s.grid = {number(need(j, where, "start"), where + ".start"), number(need(j, where, "step"), where + ".step"),
              s.values.size()};
    return s;
}

PreSelection parse_pre(const json& j) {
    const std::string where = "pre";
    if (!j.is_object()) {
        throw ParseError(where + ": expected an object");
    }
    const std::string type = text(need(j, where, "type"), where + ".type");
    if (type == "slits") {
        only_keys(j, where, {"type", "slits"});
        const json& list = need(j, where, "slits");
        if (!list.is_array()) {
            throw ParseError("pre.slits: expected an array");
        }
        DiscreteSlits d;
        for (std::size_t k = 0; k < list.size(); ++k) {
            const std::string w = "pre.slits[" + std::to_string(k) + "]";
            only_keys(list[k], w, {"x", "amplitude"});
            const auto amp = list[k].find("amplitude");
            d.slits.push_back({number(need(list[k], w, "x"), w + ".x"),
                               amp == list[k].end() ? Complex(1.0, 0.0) : complex_value(*amp, w + ".amplitude")});
        }
        return d;
    }
    if (type == "momentum") {
        only_keys(j, where, {"type", "p"});
        return MomentumEigenstate{number(need(j, where, "p"), "pre.p")};
    }
    if (type == "gaussian") {
        only_keys(j, where, {"type", "alpha", "beta", "norm"});
        return ComplexGaussian{number(need(j, where, "alpha"), "pre.alpha"), number_or(j, where, "beta", 0.0),
                               number_or(j, where, "norm", 1.0)};
    }
    if (type == "sampled") {
        return sampled(j, where);
    }
    throw ParseError("pre.type: unknown selection '" + type + "'");
}

PostSelection parse_post(const json& j) {
    const std::string where = "post";
    if (!j.is_object()) {
        throw ParseError(where + ": expected an object");
    }
    const std::string type = text(need(j, where, "type"), where + ".type");
    if (type == "position") {
        only_keys(j, where, {"type", "x_f"});
        return PositionEigenstate{number(need(j, where, "x_f"), "post.x_f")};
    }
    if (type == "spin_tagged") {
        only_keys(j, where, {"type", "x_f", "tags"});
        return SpinTagged{number(need(j, where, "x_f"), "post.x_f"), complex_list(need(j, where, "tags"), "post.tags")};
    }
    if (type == "sampled") {
        return sampled(j, where);
    }
    throw ParseError("post.type: unknown selection '" + type + "'");
}

Observable parse_observable(const json& j) {
    only_keys(j, "observable", {"kind", "slit"});
    const std::string kind = text(need(j, "observable", "kind"), "observable.kind");
    if (kind == "position") {
        return {};
    }
    if (kind == "momentum") {
        return {Observable::Kind::Momentum, 0};
    }
    if (kind == "spin_tagged_position") {
        const std::size_t slit = count(need(j, "observable", "slit"), "observable.slit");
        if (slit == 0) {
            throw ParseError("observable.slit: slits are numbered from 1");
        }
        return {Observable::Kind::SpinTaggedPosition, slit - 1};
    }
    throw ParseError("observable.kind: unknown observable '" + kind + "'");
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json complex_list_json(const std::vector<Complex>& v) {
    json out = json::array();
    for (const Complex& c : v) {
        out.push_back(complex_json(c));
    }
    return out;
}

json sampled_json(const SampledState& s) {
    return {{"type", "sampled"}, {"start", s.grid.start}, {"step", s.grid.step}, {"values", complex_list_json(s.values)}};
}

json pre_json(const PreSelection& pre) {
    if (const auto* d = std::get_if<DiscreteSlits>(&pre)) {
        json list = json::array();
        for (const Slit& s : d->slits) {
            list.push_back({{"x", s.position}, {"amplitude", complex_json(s.amplitude)}});
        }
        return {{"type", "slits"}, {"slits", list}};
    }
    if (const auto* m = std::get_if<MomentumEigenstate>(&pre)) {
        return {{"type", "momentum"}, {"p", m->momentum}};
    }
    if (const auto* g = std::get_if<ComplexGaussian>(&pre)) {
        return {{"type", "gaussian"}, {"alpha", g->alpha}, {"beta", g->beta}, {"norm", g->norm}};
    }
    return sampled_json(std::get<SampledState>(pre));
}

json post_json(const PostSelection& post) {
    if (const auto* p = std::get_if<PositionEigenstate>(&post)) {
        return {{"type", "position"}, {"x_f", p->position}};
    }
    if (const auto* s = std::get_if<SpinTagged>(&post)) {
        return {{"type", "spin_tagged"}, {"x_f", s->position}, {"tags", complex_list_json(s->tags)}};
    }
    return sampled_json(std::get<SampledState>(post));
}

}  // namespace

ScenarioFile parse_scenario_file(std::string_view source) {
    json doc;
    try {
        doc = json::parse(source.begin(), source.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    only_keys(doc, "scenario", {"params", "geometry", "pre", "post", "observable", "time_grid", "screen_grid", "oracle"});

    ScenarioFile f;
    if (const auto it = doc.find("params"); it != doc.end()) {
        only_keys(*it, "params", {"m", "hbar", "T"});
        f.scenario.params = {number_or(*it, "params", "m", 1.0), number_or(*it, "params", "hbar", 1.0),
                             number_or(*it, "params", "T", 1.0)};
    }
    if (const auto it = doc.find("geometry"); it != doc.end()) {
        const std::string g = text(*it, "geometry");
        if (g == "full_line") {
            f.scenario.geometry = Geometry::FullLine;
        } else if (g == "half_line") {
            f.scenario.geometry = Geometry::HalfLineDirichlet;
        } else {
            throw ParseError("geometry: expected 'full_line' or 'half_line'");
        }
    }
    f.scenario.pre = parse_pre(need(doc, "scenario", "pre"));
    f.scenario.post = parse_post(need(doc, "scenario", "post"));
    if (const auto it = doc.find("observable"); it != doc.end()) {
        f.observable = parse_observable(*it);
    }
    if (const auto it = doc.find("time_grid"); it != doc.end()) {
        only_keys(*it, "time_grid", {"count"});
        f.time_count = count(need(*it, "time_grid", "count"), "time_grid.count");
    }
    if (const auto it = doc.find("screen_grid"); it != doc.end()) {
        only_keys(*it, "screen_grid", {"start", "stop", "count"});
        f.screen = ScreenRange{number(need(*it, "screen_grid", "start"), "screen_grid.start"),
                               number(need(*it, "screen_grid", "stop"), "screen_grid.stop"),
                               count(need(*it, "screen_grid", "count"), "screen_grid.count")};
    }
    if (const auto it = doc.find("oracle"); it != doc.end()) {
        only_keys(*it, "oracle", {"epsilon", "points", "richardson_levels", "tolerance", "domain"});
        QuadratureConfig q;
        q.epsilon = number_or(*it, "oracle", "epsilon", q.epsilon);
        q.tolerance = number_or(*it, "oracle", "tolerance", q.tolerance);
        if (const auto p = it->find("points"); p != it->end()) {
            q.points = count(*p, "oracle.points");
        }
        if (const auto r = it->find("richardson_levels"); r != it->end()) {
            q.richardson_levels = count(*r, "oracle.richardson_levels");
        }
        if (const auto d = it->find("domain"); d != it->end()) {
            if (!d->is_array() || d->size() != 2) {
                throw ParseError("oracle.domain: expected [lo, hi]");
            }
            q.domain = std::pair{number((*d)[0], "oracle.domain[0]"), number((*d)[1], "oracle.domain[1]")};
        }
        f.oracle = q;
    }
    return f;
}

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_file(buf.str());
}

std::string dump_scenario_file(const ScenarioFile& f) {
    const PhysicalParams& p = f.scenario.params;
    json doc = {
        {"params", {{"m", p.mass}, {"hbar", p.hbar}, {"T", p.horizon}}},
        {"geometry", f.scenario.geometry == Geometry::FullLine ? "full_line" : "half_line"},
        {"pre", pre_json(f.scenario.pre)},
        {"post", post_json(f.scenario.post)},
    };
    switch (f.observable.kind) {
        case Observable::Kind::Position:
            doc["observable"] = {{"kind", "position"}};
            break;
        case Observable::Kind::Momentum:
            doc["observable"] = {{"kind", "momentum"}};
            break;
        case Observable::Kind::SpinTaggedPosition:
            doc["observable"] = {{"kind", "spin_tagged_position"}, {"slit", f.observable.slit + 1}};
            break;
    }
    if (f.time_count) {
        doc["time_grid"] = {{"count", *f.time_count}};
    }
    if (f.screen) {
        doc["screen_grid"] = {{"start", f.screen->start}, {"stop", f.screen->stop}, {"count", f.screen->count}};
    }
    if (f.oracle) {
        const QuadratureConfig& q = *f.oracle;
        doc["oracle"] = {{"epsilon", q.epsilon},
                         {"points", q.points},
                         {"richardson_levels", q.richardson_levels},
                         {"tolerance", q.tolerance}};
        if (q.domain) {
            doc["oracle"]["domain"] = json::array({q.domain->first, q.domain->second});
        }
    }
    return doc.dump(2) + "\n";
}

ScreenRange parse_screen(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
        throw ParseError("screen must be a:b:N");
    }
    const auto parse_double = [](std::string_view s) {
        double v = 0.0;
        const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
            throw ParseError("screen bound '" + std::string(s) + "' is not a number");
        }
        return v;
    };
    ScreenRange r;
    r.start = parse_double(text.substr(0, c1));
    r.stop = parse_double(text.substr(c1 + 1, c2 - c1 - 1));
    const std::string_view n = text.substr(c2 + 1);
    const auto res = std::from_chars(n.data(), n.data() + n.size(), r.count);
    if (res.ec != std::errc() || res.ptr != n.data() + n.size()) {
        throw ParseError("screen count '" + std::string(n) + "' is not an integer");
    }
    return r;
}

}  // namespace weaktraj::cli
