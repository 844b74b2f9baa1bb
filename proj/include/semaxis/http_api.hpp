#pragma once

#include "semaxis/serialization.hpp"
#include "semaxis/session.hpp"

namespace httplib {
class Server;
}

namespace semaxis {

/// Mounts the JSON API on the server. The session must outlive it.
void register_routes(httplib::Server& server, Session& session);

/// Axis with its rectangle layout, per-point projections and bead layout.
Json axis_payload(const Session& session, const AxisRecord& rec);

int http_status(ErrorCode code);

}  // namespace semaxis
