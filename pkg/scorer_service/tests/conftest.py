import threading
import time

import pytest
import uvicorn

from scorer_service.app import create_app
from scorer_service.tiny import TinyConfig, TinyMaskedScorer

# small but sufficient training run; session-scoped so it happens once
TEST_CONFIG = TinyConfig(seed=0, corpus_size=1000, epochs=3)


@pytest.fixture(scope="session")
def tiny_scorer():
    return TinyMaskedScorer.train(TEST_CONFIG)


class LiveServer:
    def __init__(self, app):
        self.config = uvicorn.Config(app, host="127.0.0.1", port=0,
                                     log_level="warning")
        self.server = uvicorn.Server(self.config)
        self.thread = threading.Thread(target=self.server.run, daemon=True)

    def start(self) -> str:
        self.thread.start()
        deadline = time.time() + 10
        while not self.server.started:
            if time.time() > deadline:
                raise RuntimeError("server did not start")
            time.sleep(0.02)
        port = self.server.servers[0].sockets[0].getsockname()[1]
        return f"http://127.0.0.1:{port}"

    def stop(self):
        self.server.should_exit = True
        self.thread.join(timeout=5)


@pytest.fixture(scope="session")
def endpoint(tiny_scorer):
    live = LiveServer(create_app(tiny_scorer, max_tokens=16))
    url = live.start()
    yield url
    live.stop()
