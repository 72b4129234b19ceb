"""Configurable in-process stub of the scoring service wire protocol."""

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer


class StubScorerServer:
    """Serves POST /score; behavior is swappable per test.

    The handler is a callable (sentences) -> (status, payload) or one of the
    special actions "drop" (close the connection without replying) and
    "garbage" (non-JSON body).
    """

    def __init__(self):
        self.requests: list[list[str]] = []
        self.handler = lambda sentences: (200, {"scores": [-1.0] * len(sentences)})
        stub = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                length = int(self.headers.get("Content-Length", 0))
                body = json.loads(self.rfile.read(length))
                sentences = body.get("sentences", [])
                stub.requests.append(sentences)
                action = stub.handler(sentences)
                if action == "drop":
                    self.connection.close()
                    return
                if action == "garbage":
                    self.send_response(200)
                    self.send_header("Content-Type", "application/json")
                    self.end_headers()
                    self.wfile.write(b"this is not json")
                    return
                status, payload = action
                data = json.dumps(payload).encode()
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

            def log_message(self, *args):
                pass

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)

    @property
    def endpoint(self) -> str:
        host, port = self.server.server_address
        return f"http://{host}:{port}"

    def __enter__(self):
        self.thread.start()
        return self

    def __exit__(self, *exc):
        self.server.shutdown()
        self.server.server_close()
