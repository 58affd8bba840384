#include "assort/instance_io.hpp"

#include <fstream>

namespace assort {

namespace {

std::vector<double> read_array(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw InvalidInstance(std::string("instance JSON lacks \"") + key + "\"");
    const auto& arr = j.at(key);
    if (!arr.is_array()) throw InvalidInstance(std::string("\"") + key + "\" must be an array");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& x : arr) {
        if (!x.is_number())
            throw InvalidInstance(std::string("\"") + key + "\" contains a non-numeric entry");
        out.push_back(x.get<double>());
    }
    return out;
}

} // namespace

nlohmann::json instance_to_json(const Instance& instance) {
    nlohmann::json j;
    j["revenues"] = std::vector<double>(instance.revenues().begin(), instance.revenues().end());
    j["utilities"] = std::vector<double>(instance.utilities().begin(), instance.utilities().end());
    return j;
}

Instance instance_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidInstance("instance JSON must be an object");
    return Instance(read_array(j, "revenues"), read_array(j, "utilities"));
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << instance_to_json(instance).dump() << '\n';
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInstance("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInstance(path.string() + ": " + e.what());
    }
    return instance_from_json(j);
}

} // namespace assort
