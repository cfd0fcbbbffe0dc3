# Copyright 2026 The sbcrb Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Worker pools for Monte-Carlo trials.

make_pool() hands out either a multiprocessing pool or an in-process pool
with the same send/get/close/join protocol. run_chunks() layers the
determinism contract on top: trials are cut into fixed-size chunks, chunk
k always draws from substream k, and results come back in chunk order no
matter how many workers ran them.

Substreams are keyed by chunk, not by trial: trial t is the
(t mod chunk_size)-th draw of substream t // chunk_size. Changing
DEFAULT_CHUNK_SIZE therefore changes every Monte-Carlo result, while
changing the number of workers changes none.
"""

import copy
import multiprocessing
import pickle
import traceback

import numpy as np

from sbcrb.host import Host


DEFAULT_CHUNK_SIZE = 1000


def make_pool(host, jobs, callback, context, pre_fn, post_fn):
    _validate_args(context, pre_fn, post_fn)
    if jobs > 1:
        return _ProcessPool(host, jobs, callback, context, pre_fn, post_fn)
    return _AsyncPool(host, jobs, callback, context, pre_fn, post_fn)


class _MessageType(object):
    Request = 'Request'
    Response = 'Response'
    Close = 'Close'
    Done = 'Done'
    Error = 'Error'
    Interrupt = 'Interrupt'

    values = [Request, Response, Close, Done, Error, Interrupt]


def _validate_args(context, pre_fn, post_fn):
    for name, obj in (('context', context), ('pre_fn', pre_fn),
                      ('post_fn', post_fn)):
        try:
            pickle.dumps(obj)
        except Exception as e:
            raise ValueError('%s passed to make_pool is not picklable: %s' %
                             (name, e))


class _ProcessPool(object):

    def __init__(self, host, jobs, callback, context, pre_fn, post_fn):
        self.host = host
        self.jobs = jobs
        self.requests = multiprocessing.Queue()
        self.responses = multiprocessing.Queue()
        self.workers = []
        self.discarded_responses = []
        self.closed = False
        self.erred = False
        for worker_num in range(1, jobs + 1):
            w = multiprocessing.Process(target=_loop,
                                        args=(self.requests, self.responses,
                                              host.for_mp(), worker_num,
                                              callback, context,
                                              pre_fn, post_fn))
            w.start()
            self.workers.append(w)

    def send(self, msg):
        self.requests.put((_MessageType.Request, msg))

    def get(self):
        msg_type, resp = self.responses.get()
        if msg_type == _MessageType.Error:
            self._handle_error(resp)
        elif msg_type == _MessageType.Interrupt:
            raise KeyboardInterrupt
        assert msg_type == _MessageType.Response
        return resp

    def close(self):
        for _ in self.workers:
            self.requests.put((_MessageType.Close, None))
        self.closed = True

    def join(self):
        if not self.closed:
            # Aborting: terminate the workers instead of draining them.
            for w in self.workers:
                w.terminate()
                w.join()
            return []

        final_responses = []
        error = None
        interrupted = None
        for _ in self.workers:
            while True:
                msg_type, resp = self.responses.get()
                if msg_type == _MessageType.Error:
                    error = resp
                    break
                if msg_type == _MessageType.Interrupt:
                    interrupted = True
                    break
                if msg_type == _MessageType.Done:
                    final_responses.append(resp[1])
                    break
                self.discarded_responses.append(resp)

        for w in self.workers:
            w.join()

        if error:
            self._handle_error(error)
        if interrupted:
            raise KeyboardInterrupt
        return final_responses

    def _handle_error(self, msg):
        worker_num, tb = msg
        self.erred = True
        raise Exception('Error from worker %d (traceback follows):\n%s' %
                        (worker_num, tb))


# 'Too many arguments' pylint: disable=R0913

def _loop(requests, responses, host, worker_num,
          callback, context, pre_fn, post_fn, should_loop=True):
    host = host or Host()
    try:
        context_after_pre = pre_fn(host, worker_num, context)
        keep_looping = True
        while keep_looping:
            message_type, args = requests.get(block=True)
            if message_type == _MessageType.Close:
                responses.put((_MessageType.Done,
                               (worker_num, post_fn(context_after_pre))))
                break
            assert message_type == _MessageType.Request
            resp = callback(context_after_pre, args)
            responses.put((_MessageType.Response, resp))
            keep_looping = should_loop
    except KeyboardInterrupt as e:
        responses.put((_MessageType.Interrupt, (worker_num, str(e))))
    except Exception:
        responses.put((_MessageType.Error,
                       (worker_num, traceback.format_exc())))


class _AsyncPool(object):

    def __init__(self, host, jobs, callback, context, pre_fn, post_fn):
        self.host = host or Host()
        self.jobs = jobs
        self.callback = callback
        self.context = copy.deepcopy(context)
        self.msgs = []
        self.closed = False
        self.post_fn = post_fn
        self.context_after_pre = pre_fn(self.host, 1, self.context)
        self.final_context = None

    def send(self, msg):
        self.msgs.append(msg)

    def get(self):
        return self.callback(self.context_after_pre, self.msgs.pop(0))

    def close(self):
        self.closed = True
        self.final_context = self.post_fn(self.context_after_pre)

    def join(self):
        if not self.closed:
            self.close()
        return [self.final_context]


class RngSpec(object):
    """Maps (seed, stream, index) to an independent numpy Generator."""

    def __init__(self, seed, stream=0):
        self.seed = int(seed)
        self.stream = int(stream)

    def generator(self, index):
        seq = np.random.SeedSequence(self.seed,
                                     spawn_key=(self.stream, int(index)))
        return np.random.default_rng(seq)


class _ChunkRequest(object):

    def __init__(self, index, start, count):
        self.index = index
        self.start = start
        self.count = count


def chunk_bounds(trials, chunk_size=DEFAULT_CHUNK_SIZE):
    if trials < 1:
        raise ValueError('trials must be at least 1, got %r' % trials)
    return [_ChunkRequest(i, start, min(chunk_size, trials - start))
            for i, start in enumerate(range(0, trials, chunk_size))]


def run_chunks(host, jobs, chunk_fn, context, trials, rng_spec,
               chunk_size=DEFAULT_CHUNK_SIZE, progress=None):
    """Evaluates chunk_fn(context, rng, count) over all chunks of trials.

    Returns the per-chunk results ordered by chunk index.
    """
    chunks = chunk_bounds(trials, chunk_size)
    jobs = max(1, min(jobs, len(chunks)))
    worker = _ChunkWorker(chunk_fn, context, rng_spec)
    if progress:
        progress.start(len(chunks))
    results = {}
    pool = make_pool(host, jobs, _run_one_chunk, worker,
                     _setup_worker, _teardown_worker)
    try:
        for chunk in chunks:
            pool.send(chunk)
        for _ in chunks:
            index, value = pool.get()
            results[index] = value
            if progress:
                progress.advance('chunk %d' % index)
        pool.close()
    finally:
        pool.join()
    if progress:
        progress.flush()
    return [results[chunk.index] for chunk in chunks]


def pairwise_sum(values):
    """Sums values in a fixed binary tree so the rounding is reproducible."""
    values = list(values)
    if not values:
        raise ValueError('nothing to sum')
    while len(values) > 1:
        paired = [values[i] + values[i + 1]
                  for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            paired.append(values[-1])
        values = paired
    return values[0]


class _ChunkWorker(object):

    def __init__(self, chunk_fn, context, rng_spec):
        self.chunk_fn = chunk_fn
        self.context = context
        self.rng_spec = rng_spec
        self.host = None
        self.worker_num = None


def _setup_worker(host, worker_num, worker):
    worker.host = host
    worker.worker_num = worker_num
    return worker


def _teardown_worker(worker):
    return worker.worker_num


def _run_one_chunk(worker, chunk):
    rng = worker.rng_spec.generator(chunk.index)
    return chunk.index, worker.chunk_fn(worker.context, rng, chunk.count)
