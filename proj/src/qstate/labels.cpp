#include <algorithm>
#include <cctype>
#include <set>
#include <string_view>

#include "rio/qstate.hpp"

namespace rio {

namespace {

bool valid_role(char c) {
    return std::string_view("ABCXYZ").find(c) != std::string_view::npos;
}

}  // namespace

QubitLabel::QubitLabel(std::string name) : name_(std::move(name)) {
    if (name_.empty() || !valid_role(name_.front())) {
        throw std::invalid_argument("qubit label must start with one of A,B,C,X,Y,Z: '" +
                                    name_ + "'");
    }
    if (!std::all_of(name_.begin() + 1, name_.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; })) {
        throw std::invalid_argument("qubit label suffix must be decimal digits: '" + name_ + "'");
    }
}

std::vector<QubitLabel> numbered_labels(char role, std::size_t first, std::size_t last) {
    std::vector<QubitLabel> out;
    for (std::size_t i = first; i <= last; ++i) {
        out.emplace_back(std::string(1, role) + std::to_string(i));
    }
    return out;
}

SpaceStructure::SpaceStructure(std::vector<QubitLabel> labels) : labels_(std::move(labels)) {
    if (labels_.size() > kMaxQubits) {
        throw std::invalid_argument("register exceeds " + std::to_string(kMaxQubits) +
                                    " qubits");
    }
    std::set<QubitLabel> seen;
    for (const auto& label : labels_) {
        if (!seen.insert(label).second) {
            throw std::invalid_argument("duplicate qubit label '" + label.name() + "'");
        }
    }
}

bool SpaceStructure::contains(const QubitLabel& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t SpaceStructure::position(const QubitLabel& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::out_of_range("unknown qubit label '" + label.name() + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

SpaceStructure SpaceStructure::concat(const SpaceStructure& other) const {
    std::vector<QubitLabel> joined = labels_;
    joined.insert(joined.end(), other.labels_.begin(), other.labels_.end());
    return SpaceStructure(std::move(joined));
}

}  // namespace rio
