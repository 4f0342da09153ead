#include "rio/protocol.hpp"

namespace rio::protocol {

AuditReport audit_bits(const std::vector<Message>& messages, const ProtocolConfig& config) {
    const auto expected = declared_schedule(config);
    AuditReport rep;
    const std::size_t rows = std::max(expected.size(), messages.size());
    for (std::size_t i = 0; i < rows; ++i) {
        AuditReport::Row row;
        if (i < expected.size()) row.expected = expected[i];
        if (i < messages.size()) row.actual = messages[i];
        if (row.expected && row.actual) {
            const auto& e = *row.expected;
            const auto& m = *row.actual;
            row.ok = e.from == m.from && e.to == m.to && e.tag == m.tag && e.width == m.bits.size();
        }
        if (!row.ok && rep.failure.empty()) {
            if (!row.actual) {
                rep.failure = "missing message '" + row.expected->tag + "' from " +
                              to_string(row.expected->from) + " to " + to_string(row.expected->to);
            } else if (!row.expected) {
                rep.failure = "unexpected message '" + row.actual->tag + "'";
            } else {
                rep.failure = "step " + std::to_string(i + 1) + ": expected '" + row.expected->tag +
                              "' " + to_string(row.expected->from) + "->" +
                              to_string(row.expected->to) + " width " +
                              std::to_string(row.expected->width) + ", got '" + row.actual->tag +
                              "' " + to_string(row.actual->from) + "->" +
                              to_string(row.actual->to) + " width " +
                              std::to_string(row.actual->bits.size());
            }
        }
        rep.rows.push_back(std::move(row));
    }
    rep.pass = rep.failure.empty();
    return rep;
}

AuditReport audit_bits(const Transcript& transcript, const ProtocolConfig& config) {
    return audit_bits(transcript.messages(), config);
}

}  // namespace rio::protocol
