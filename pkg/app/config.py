#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
InvariantSplit - Configurações
Todas as variáveis podem vir do ambiente ou do arquivo .env
"""

import os
from dotenv import load_dotenv

load_dotenv()

# Limites de enumeração
PARTITION_CAP = int(os.getenv("PARTITION_CAP", "8"))
CYCLIC_SCAN_CAP = int(os.getenv("CYCLIC_SCAN_CAP", "1000000"))

# Paralelismo do fuzz
MAX_WORKERS = int(os.getenv("MAX_WORKERS", "6"))

# Tamanhos padrão das instâncias aleatórias
FUZZ_MAX_CARRIER = int(os.getenv("FUZZ_MAX_CARRIER", "40"))
FUZZ_MAX_GENS = int(os.getenv("FUZZ_MAX_GENS", "4"))
FUZZ_EXHAUSTIVE_CARRIER = int(os.getenv("FUZZ_EXHAUSTIVE_CARRIER", "8"))

# Logs
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FILE = os.getenv("LOG_FILE", "")
