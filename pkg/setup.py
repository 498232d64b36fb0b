#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup


setup(
    name='LTCoop',
    version='0.1.0',
    description='Cooperative downloads over multiple paths with LT codes',
    long_description=open('README.rst').read(),
    long_description_content_type='text/x-rst',
    packages=[
        'ltcoop',
        'ltcoop.codes',
        'ltcoop.coop',
        'ltcoop.tests',
    ],
    test_suite='ltcoop.tests.test_all.suite',
    install_requires=[
        'numpy',
        'scipy',
        'simpy',
    ],
    extras_require={
        # Optional dependencies for development: testing, documentation, and
        # packaging.
        'dev': [
            # Run the tests.
            'flake8',
            'coverage',
            # Build the documentation.
            'sphinx',
            'numpydoc',
            'sphinxcontrib-bibtex',
            'sphinx-rtd-theme',
            # Build and upload packages.
            'wheel',
            'twine',
        ],
    },
    entry_points={
        'console_scripts': ['ltcoop = ltcoop.harness:main'],
    },
    python_requires='>=3.6',
    license="BSD",
    keywords='rateless codes LT codes cooperative download multipath',
    platforms='any',
    classifiers=[
        'Topic :: System :: Networking',
        'Topic :: Scientific/Engineering',
        'Environment :: Console',
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Developers',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Natural Language :: English',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3.6',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
    ],
)
