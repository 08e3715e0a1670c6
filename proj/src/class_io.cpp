#include "cotv/class_io.hpp"

#include <fstream>
#include <sstream>

namespace cotv {

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        }
        else
            ++col;
    }
    return { line, col };
}

const Json& field(const Json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name))
        throw Error(ErrorCode::SchemaError, std::string("missing field '") + name + "'");
    return j.at(name);
}

template <typename T>
T as(const Json& j, const std::string& where)
{
    try {
        return j.get<T>();
    }
    catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::SchemaError, "field '" + where + "' has the wrong type");
    }
}

} // namespace

Json parse_json_text(const std::string& text, const std::string& origin)
{
    try {
        return Json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::ostringstream msg;
        msg << origin << ":" << line << ":" << col << ": malformed JSON";
        throw Error(ErrorCode::ParseError, msg.str());
    }
}

Json load_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

Json class_to_json(const VerifierClass& cls)
{
    Json j;
    j["sigma"] = cls.sigma();
    j["problems"] = cls.problems();
    j["L"] = cls.max_len();
    if (cls.fail_token())
        j["fail_token"] = cls.fail_token()->id;
    Json universe = Json::array();
    for (const auto& z : cls.universe()) {
        Json steps = Json::array();
        for (auto t : z.steps)
            steps.push_back(t.id);
        universe.push_back(Json::array({ z.problem.id, steps }));
    }
    j["universe"] = universe;
    Json verifiers = Json::array();
    for (std::size_t v = 0; v < cls.verifier_count(); ++v) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < cls.universe_size(); ++i)
            rows.push_back(cls.accepts(v, i) ? 1 : 0);
        verifiers.push_back(Json{ { "id", v }, { "name", cls.verifier_name(v) }, { "rows", rows } });
    }
    j["verifiers"] = verifiers;
    return j;
}

ClassPtr class_from_json(const Json& j, ClassCaps caps)
{
    if (!j.is_object())
        throw Error(ErrorCode::SchemaError, "class file must be a JSON object");
    VerifierClass::Tables t;
    t.sigma = as<std::vector<std::string>>(field(j, "sigma"), "sigma");
    t.problems = as<std::vector<std::string>>(field(j, "problems"), "problems");
    t.max_len = as<int>(field(j, "L"), "L");
    if (j.contains("fail_token") && !j.at("fail_token").is_null()) {
        auto f = as<long long>(j.at("fail_token"), "fail_token");
        if (f < 0 || f >= static_cast<long long>(t.sigma.size()))
            throw Error(ErrorCode::SchemaError, "field 'fail_token' outside the alphabet");
        t.fail_token = Token{ static_cast<std::uint16_t>(f) };
    }

    const auto& universe = field(j, "universe");
    if (!universe.is_array())
        throw Error(ErrorCode::SchemaError, "field 'universe' must be an array");
    for (std::size_t i = 0; i < universe.size(); ++i) {
        const auto where = "universe[" + std::to_string(i) + "]";
        const auto& e = universe[i];
        if (!e.is_array() || e.size() != 2 || !e[1].is_array())
            throw Error(ErrorCode::SchemaError, "field '" + where + "' must be [problem, [tokens...]]");
        auto problem = as<long long>(e[0], where + "[0]");
        if (problem < 0 || problem >= static_cast<long long>(t.problems.size()))
            throw Error(ErrorCode::SchemaError, "field '" + where + "' names an unknown problem");
        Trace steps;
        for (const auto& tok : e[1]) {
            auto id = as<long long>(tok, where + "[1]");
            if (id < 0 || id >= static_cast<long long>(t.sigma.size()))
                throw Error(ErrorCode::SchemaError, "field '" + where + "' uses a token outside the alphabet");
            steps.push_back(Token{ static_cast<std::uint16_t>(id) });
        }
        t.universe.push_back(PrefixInstance{ ProblemId{ static_cast<std::uint32_t>(problem) }, std::move(steps) });
    }

    const auto& verifiers = field(j, "verifiers");
    if (!verifiers.is_array())
        throw Error(ErrorCode::SchemaError, "field 'verifiers' must be an array");
    bool named = false;
    for (std::size_t v = 0; v < verifiers.size(); ++v) {
        const auto where = "verifiers[" + std::to_string(v) + "]";
        const auto& rows = field(verifiers[v], "rows");
        if (!rows.is_array())
            throw Error(ErrorCode::SchemaError, "field '" + where + ".rows' must be an array");
        if (rows.size() != t.universe.size())
            throw Error(ErrorCode::SchemaError, "field '" + where + ".rows' has " + std::to_string(rows.size()) +
                                                    " entries, universe has " + std::to_string(t.universe.size()));
        std::vector<bool> row;
        row.reserve(rows.size());
        for (const auto& r : rows) {
            auto b = as<int>(r, where + ".rows");
            if (b != 0 && b != 1)
                throw Error(ErrorCode::SchemaError, "field '" + where + ".rows' must hold 0 or 1");
            row.push_back(b == 1);
        }
        t.rows.push_back(std::move(row));
        if (verifiers[v].contains("name")) {
            named = true;
            t.verifier_names.push_back(as<std::string>(verifiers[v].at("name"), where + ".name"));
        }
        else
            t.verifier_names.push_back("h" + std::to_string(v));
    }
    if (!named)
        t.verifier_names.clear();
    return std::make_shared<const VerifierClass>(std::move(t), caps);
}

std::string dump_class(const VerifierClass& cls)
{
    auto j = class_to_json(cls);
    std::ostringstream out;
    out << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        out << (first ? "" : ",\n") << Json(it.key()).dump() << ": ";
        first = false;
        if (it.key() == "verifiers" || it.key() == "universe") {
            out << "[";
            for (std::size_t i = 0; i < it.value().size(); ++i)
                out << (i ? ",\n  " : "\n  ") << it.value()[i].dump();
            out << (it.value().empty() ? "]" : "\n]");
        }
        else
            out << it.value().dump();
    }
    out << "\n}\n";
    return out.str();
}

ClassPtr parse_class(const std::string& text, ClassCaps caps)
{
    return class_from_json(parse_json_text(text, "class"), caps);
}

ClassPtr load_class(const std::string& path, ClassCaps caps) { return class_from_json(load_json_file(path), caps); }

void save_class(const VerifierClass& cls, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << dump_class(cls);
}

} // namespace cotv
