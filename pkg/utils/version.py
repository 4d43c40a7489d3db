import subprocess

from pathlib2 import Path

__version__ = '0.1.0'


def describe():
    root = Path(__file__).resolve().parent.parent
    try:
        out = subprocess.run(['git', 'describe', '--always', '--dirty', '--tags'], cwd=str(root),
                             stdout=subprocess.PIPE, stderr=subprocess.DEVNULL, check=True)
    except (OSError, subprocess.CalledProcessError):
        return __version__
    desc = out.stdout.decode().strip()
    return desc if desc else __version__
