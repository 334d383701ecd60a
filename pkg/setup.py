#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from setuptools import setup

with open("README.md", "r", encoding="utf-8") as readme:
    long_description = readme.read()

setup(
    name="wigner-streams",
    version="0.1.0",
    description="Dispersion relations, stability maps and Wigner-Poisson simulation of quantum multistream plasmas.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3.8",
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    packages=["wigner_streams"],
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.9",
        "pydantic>=2.0",
        "tomli>=2.0; python_version < '3.11'",
    ],
    extras_require={"dev": ["black>=21.7b0", "pytest>=6.2.4", "pytest-cov>=2.12.1"]},
    entry_points={"console_scripts": ["wigner-streams=wigner_streams.cli:main"]},
    python_requires=">=3.8",
)
