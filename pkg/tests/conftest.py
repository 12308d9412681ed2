import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from hypothesis import settings

settings.register_profile('default', max_examples=200, deadline=None)
settings.load_profile('default')


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get('test_acceptance')
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section('acceptance criteria')
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
