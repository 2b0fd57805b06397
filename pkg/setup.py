from setuptools import setup, find_packages

exec(open('psdmflib/version.py').read())

setup(
    name='python-psdmf',
    version=globals()['__version__'],
    packages=find_packages(exclude=('tests', 'tests.*')),
    license='Apache 2.0',
    description='Partially shared semi-supervised deep matrix factorization for multi-view clustering',
    long_description_content_type='text/x-rst',
    long_description=open('README.rst').read() + '\n\n' + open('CHANGELOG.rst').read(),
    keywords='multi-view clustering semi-nmf deep matrix factorization semi-supervised',
    python_requires='>=3.8, <4',
    install_requires=[
        'numpy>=1.22',
        'scipy>=1.8',
        'scikit-learn>=1.1',
    ],
    entry_points={
        'console_scripts': [
            'psdmf = psdmflib.cli:main',
        ],
    },
    zip_safe=False,
    classifiers=[
        'Development Status :: 4 - Beta',
        'License :: OSI Approved :: Apache Software License',
        'Topic :: Scientific/Engineering :: Artificial Intelligence',
        'Intended Audience :: Science/Research',
        'Environment :: Console',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Programming Language :: Python :: 3 :: Only',
        'Programming Language :: Python :: Implementation :: CPython',
    ],
)
