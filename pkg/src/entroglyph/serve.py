"""Local HTTP server for running trial sessions.

Serves a static directory (the trial UI build plus manifests and
stimulus assets) and accepts completed session results as JSON POSTs to
``/results``, writing each to the results directory. Intended for a lab
machine on a trusted network: there is deliberately no authentication.
"""

from __future__ import annotations

import json
import re
import threading
from datetime import datetime, timezone
from functools import partial
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .trials import results_from_json

__all__ = ["TrialServer", "serve_trials"]

_SAFE = re.compile(r"[^A-Za-z0-9_-]+")


class _TrialHandler(SimpleHTTPRequestHandler):
    # directory= handles GETs; results_dir is injected via partial
    def __init__(self, *args, results_dir: Path, **kwargs):
        self.results_dir = results_dir
        super().__init__(*args, **kwargs)

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def do_POST(self):
        if self.path.rstrip("/") != "/results":
            self.send_error(404, "POST only accepted on /results")
            return
        length = int(self.headers.get("Content-Length", 0))
        body = self.rfile.read(length).decode("utf-8")
        try:
            results = results_from_json(body)
        except Exception as exc:
            self._reply(400, {"error": str(exc)})
            return
        participant = _SAFE.sub("-", results.participant_id) or "anonymous"
        stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S%f")
        name = f"results_{participant}_{stamp}.json"
        (self.results_dir / name).write_text(body, encoding="utf-8")
        self._reply(201, {"stored": name})

    def _reply(self, status: int, payload: dict):
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


class TrialServer:
    """Threaded server wrapper; usable programmatically or from the CLI."""

    def __init__(self, directory, results_dir, host: str = "127.0.0.1",
                 port: int = 8765):
        self.directory = Path(directory)
        self.results_dir = Path(results_dir)
        self.results_dir.mkdir(parents=True, exist_ok=True)
        handler = partial(_TrialHandler, directory=str(self.directory),
                          results_dir=self.results_dir)
        self.httpd = ThreadingHTTPServer((host, port), handler)

    @property
    def port(self) -> int:
        return self.httpd.server_address[1]

    def serve_forever(self):
        self.httpd.serve_forever()

    def start_background(self) -> threading.Thread:
        thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)
        thread.start()
        return thread

    def shutdown(self):
        self.httpd.shutdown()
        self.httpd.server_close()


def serve_trials(directory, results_dir, host: str = "127.0.0.1",
                 port: int = 8765):
    server = TrialServer(directory, results_dir, host, port)
    # flush so a supervising process sees the chosen port immediately
    print(f"serving {server.directory} on http://{host}:{server.port} "
          f"(results to {server.results_dir})", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
