#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fibarc/augmented.hpp"

namespace fibarc {

/// Size counters reported by `fibarc info` and `/v1/info`, in display order.
std::vector<std::pair<std::string, std::uint64_t>> arrangement_info(const AugmentedArrangement& aug);

struct HttpResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

using QueryParams = std::multimap<std::string, std::string>;

/// Read-only request handling over one arrangement. `handle` is a pure
/// function of the arrangement and the request.
class QueryService {
  public:
    explicit QueryService(AugmentedArrangement aug);

    const AugmentedArrangement& arrangement() const { return aug_; }

    HttpResponse handle(const std::string& path, const QueryParams& params) const;

  private:
    HttpResponse barcode(const QueryParams& params) const;

    AugmentedArrangement aug_;
    std::string arrangement_body_;
    std::string info_body_;
};

/// JSON payload of a barcode query.
std::string barcode_json(const QueryLine& line, int face, const Barcode& barcode);

/// HTTP front end for a QueryService. Serves `/v1/*` and, when a directory is
/// given, static files from it at `/`.
class HttpServer {
  public:
    HttpServer(const QueryService& service, std::string static_dir = {});
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds to host:port (port 0 picks a free one) and returns the bound port.
    int bind(const std::string& host, int port);
    /// Serves until `stop` is called.
    void listen();
    void stop();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace fibarc
