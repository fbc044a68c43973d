#!/usr/bin/env python3
"""
RSNC 명령행 실행 스크립트
예: python rsnc.py run --algo rsnc --scenario scenario.json
"""

import os
import sys

# 프로젝트 루트를 import 경로에 추가
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
