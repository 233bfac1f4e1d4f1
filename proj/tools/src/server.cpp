#include <nclab_service/server.hpp>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <condition_variable>
#include <deque>
#include <thread>
#include <vector>

namespace nclab::service {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

    class WsConnection : public std::enable_shared_from_this<WsConnection> {
    public:
        WsConnection(tcp::socket && socket, std::shared_ptr<SessionManager> sessions) :
            ws_(std::move(socket)),
            sessions_(std::move(sessions))
        {
        }

        void run(http::request<http::string_body> req)
        {
            ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
            ws_.text(true);
            ws_.async_accept(req, beast::bind_front_handler(&WsConnection::on_accept, shared_from_this()));
        }

    private:
        void on_accept(beast::error_code ec)
        {
            if (ec)
                return;
            read();
        }

        void read() { ws_.async_read(buffer_, beast::bind_front_handler(&WsConnection::on_read, shared_from_this())); }

        void on_read(beast::error_code ec, std::size_t)
        {
            if (ec)
                return;
            const std::string text = beast::buffers_to_string(buffer_.data());
            buffer_.consume(buffer_.size());
            for (auto & reply : sessions_->handle_text(bound_, text))
                queue_.push_back(std::move(reply));
            if (!writing_)
                write();
            read();
        }

        void write()
        {
            if (queue_.empty()) {
                writing_ = false;
                return;
            }
            writing_ = true;
            ws_.async_write(net::buffer(queue_.front()), beast::bind_front_handler(&WsConnection::on_write, shared_from_this()));
        }

        void on_write(beast::error_code ec, std::size_t)
        {
            if (ec)
                return;
            queue_.pop_front();
            write();
        }

        websocket::stream<beast::tcp_stream> ws_;
        beast::flat_buffer buffer_;
        std::shared_ptr<SessionManager> sessions_;
        std::string bound_;
        std::deque<std::string> queue_;
        bool writing_ = false;
    };

    class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
    public:
        HttpConnection(tcp::socket && socket, std::shared_ptr<SessionManager> sessions) :
            stream_(std::move(socket)),
            sessions_(std::move(sessions))
        {
        }

        void run() { net::dispatch(stream_.get_executor(), beast::bind_front_handler(&HttpConnection::read, shared_from_this())); }

    private:
        void read()
        {
            req_ = {};
            stream_.expires_after(std::chrono::seconds(30));
            http::async_read(stream_, buffer_, req_, beast::bind_front_handler(&HttpConnection::on_read, shared_from_this()));
        }

        void on_read(beast::error_code ec, std::size_t)
        {
            if (ec) {
                stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
                return;
            }
            if (websocket::is_upgrade(req_)) {
                stream_.expires_never();
                std::make_shared<WsConnection>(stream_.release_socket(), sessions_)->run(std::move(req_));
                return;
            }

            auto res = std::make_shared<http::response<http::string_body>>();
            res->version(req_.version());
            res->keep_alive(req_.keep_alive());
            res->set(http::field::content_type, "text/plain");
            if (req_.method() == http::verb::get && req_.target() == "/healthz") {
                res->result(http::status::ok);
                res->body() = "ok\n";
            }
            else {
                res->result(http::status::not_found);
                res->body() = "not found\n";
            }
            res->prepare_payload();
            http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
                if (ec || !res->keep_alive()) {
                    self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
                    return;
                }
                self->read();
            });
        }

        beast::tcp_stream stream_;
        beast::flat_buffer buffer_;
        http::request<http::string_body> req_;
        std::shared_ptr<SessionManager> sessions_;
    };

}

struct PlayServer::Impl {
    std::shared_ptr<SessionManager> sessions;
    ServerOptions options;
    net::io_context ioc;
    tcp::acceptor acceptor{ioc};
    std::vector<std::thread> threads;
    std::mutex mutex;
    std::condition_variable stopped_cv;
    bool running = false;

    void accept()
    {
        acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
            if (ec)
                return;
            std::make_shared<HttpConnection>(std::move(socket), sessions)->run();
            accept();
        });
    }
};

PlayServer::PlayServer(std::shared_ptr<SessionManager> sessions, ServerOptions options) :
    impl_(std::make_unique<Impl>())
{
    impl_->sessions = std::move(sessions);
    impl_->options = std::move(options);
}

PlayServer::~PlayServer() { stop(); }

unsigned short PlayServer::start()
{
    std::lock_guard lock(impl_->mutex);
    if (impl_->running)
        return impl_->acceptor.local_endpoint().port();
    const tcp::endpoint endpoint(net::ip::make_address(impl_->options.address), impl_->options.port);
    impl_->acceptor.open(endpoint.protocol());
    impl_->acceptor.set_option(net::socket_base::reuse_address(true));
    impl_->acceptor.bind(endpoint);
    impl_->acceptor.listen(net::socket_base::max_listen_connections);
    impl_->accept();
    impl_->running = true;
    const unsigned n = std::max(1U, impl_->options.threads);
    for (unsigned i = 0; i < n; ++i)
        impl_->threads.emplace_back([this] { impl_->ioc.run(); });
    return impl_->acceptor.local_endpoint().port();
}

void PlayServer::stop()
{
    std::vector<std::thread> threads;
    {
        std::lock_guard lock(impl_->mutex);
        if (!impl_->running)
            return;
        impl_->running = false;
        impl_->ioc.stop();
        threads.swap(impl_->threads);
    }
    for (auto & t : threads)
        t.join();
    beast::error_code ec;
    impl_->acceptor.close(ec);
    impl_->stopped_cv.notify_all();
}

void PlayServer::wait()
{
    std::unique_lock lock(impl_->mutex);
    impl_->stopped_cv.wait(lock, [this] { return !impl_->running; });
}

} // namespace nclab::service
