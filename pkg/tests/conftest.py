import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

SERVED_BODY = b"<html><body><div>hello</div></body></html>"
SERVED_LISTING = (
    b"<h1>shop</h1><table>"
    + b'<tr><td>Book</td><td>Ann</td><td><a href="#">buy</a></td></tr>' * 4
    + b"</table><p>foot</p>")


class _Handler(BaseHTTPRequestHandler):
    def do_GET(self):
        if self.path == "/books":
            self.send_response(200)
            self.send_header("Content-Type", "text/html")
            self.end_headers()
            self.wfile.write(SERVED_LISTING)
        elif self.path == "/ok":
            self.send_response(200)
            self.send_header("Content-Type", "text/html")
            self.end_headers()
            self.wfile.write(SERVED_BODY)
        elif self.path == "/redirect":
            self.send_response(302)
            self.send_header("Location", "/ok")
            self.end_headers()
        elif self.path == "/slow":
            time.sleep(1.5)
            self.send_response(200)
            self.end_headers()
            self.wfile.write(b"late")
        else:
            self.send_error(404)

    def log_message(self, *args):
        pass


@pytest.fixture(scope="session")
def http_server():
    """Local HTTP endpoint: /ok, /redirect -> /ok, /slow (1.5s), else 404."""
    httpd = ThreadingHTTPServer(("127.0.0.1", 0), _Handler)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{httpd.server_address[1]}"
    httpd.shutdown()
    thread.join(timeout=5)
