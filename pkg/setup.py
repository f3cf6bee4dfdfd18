#!/usr/bin/env python

from setuptools import find_packages, setup

setup(
        name='pyperverse',
        version='0.1.0',
        description='Perverse triangulations, their quiver algebras and cellular sheaf data over exact rationals.',
        packages=find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*']),
        classifiers=[
            'License :: OSI Approved :: MIT License',
            'Programming Language :: Python :: 3',
            'Operating System :: OS Independent',
            'Development Status :: 3 - Alpha',
            'Topic :: Scientific/Engineering :: Mathematics',
            'Intended Audience :: Science/Research'
        ],
        install_requires=[
            'sympy>=1.12',
            'numpy>=1.22',
            'fastjsonschema',
            'tinydb>=4',
            'networkx>=2.6'
        ],
        extras_require={
            'telemetry': ['sentry-sdk'],
            'test': ['pytest', 'hypothesis']
        },
        entry_points={
            'console_scripts': ['pyperverse=pyperverse.__main__:main']
        },
        python_requires='>=3.8'
)
